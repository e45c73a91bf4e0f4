#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cr3bp/flow.hpp"
#include "cr3bp/saddle_center.hpp"

using namespace cr3bp;

namespace {
const double kSqrt7 = std::sqrt(7.0);
}

TEST_CASE("closed forms: a, lambdas, C constants, symplectic basis") {
    SaddleCenterData scd = saddle_center_data(MassRatio::from_mu(0.5));
    CHECK(scd.a == doctest::Approx(4.0).epsilon(1e-13));

    for (double mu : {0.05, 0.17, 0.33, 0.5, 0.71, 0.9}) {
        SaddleCenterData d = saddle_center_data(MassRatio::from_mu(mu));
        CHECK(d.lambda1 * d.lambda1 >= 1.0 + 2.0 * kSqrt7 - 1e-12);
        CHECK(d.lambda2 * d.lambda2 >= -1.0 + 2.0 * kSqrt7 - 1e-12);
        CHECK(d.lambda1 >= d.lambda2);
        CHECK(d.C2 > d.C1);
        CHECK(d.C1 > 0.0);
        CHECK(d.C0 * d.C0 ==
              doctest::Approx(2.0 * std::sqrt(d.a * (9.0 * d.a - 4.0))).epsilon(1e-12));
        CHECK(symplectic_defect(d.V) < 1e-10);

        // V block-diagonalizes the linearization at l1
        MassRatio mr = MassRatio::from_mu(mu);
        LagrangeData lag = lagrange_values(mr);
        Mat4 A = field_jacobian(mr, lag.points[0]);
        Mat4 B = d.Vinv * A * d.V;
        Mat4 expected = linear_generator(d);
        CHECK((B - expected).cwiseAbs().maxCoeff() < 1e-8);

        // polynomial identity used by the interpolation estimates
        double a = d.a;
        double lhs = std::pow(d.C2, 4) * d.lambda2 * d.lambda2 -
                     std::pow(d.C1, 4) * d.lambda1 * d.lambda1;
        double rhs = 8.0 - 24.0 * a + 44.0 * a * a + 72.0 * a * a * a;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
        CHECK(rhs > 0.0);
    }
}

TEST_CASE("quadratic model H2 and rescaling limit") {
    SaddleCenterData scd = saddle_center_data(MassRatio::from_mu(0.5));
    CHECK(h2(scd, Vec4::Zero()) == 0.0);

    // Lyapunov orbit lies on H2^{-1}(c0) exactly
    double c0 = 0.7;
    for (double t : {0.0, 0.3, 1.1, 2.9}) {
        Vec4 x = linear_lyapunov(scd, c0, t);
        CHECK(h2(scd, x) == doctest::Approx(c0).epsilon(1e-13));
    }
    Vec4 x0 = linear_lyapunov(scd, c0, 0.0);
    CHECK(x0(1) == doctest::Approx(std::sqrt(2.0 * c0 / scd.lambda2)).epsilon(1e-14));
    CHECK(x0(0) == 0.0);
    CHECK(x0(2) == 0.0);
    CHECK(x0(3) == 0.0);

    // H_eps(x) -> H2(x) monotonically (mu = 1/2; cubic term vanishes)
    MassRatio mr = MassRatio::from_mu(0.5);
    LagrangeData lag = lagrange_values(mr);
    double L1 = lag.L[0];
    Vec4 xs;
    xs << 0.21, -0.4, 0.13, 0.37;
    double href = h2(scd, xs);
    double prev_err = 1e99;
    for (double eps : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        Vec4 z = phase_from_model(scd, lag.points[0], eps, xs);
        double heps = (hamiltonian(mr, z) - L1) / eps;
        double err = std::abs(heps - href);
        CHECK(err < prev_err + 1e-12);
        prev_err = err;
    }
    // generic mu: error is O(sqrt(eps)); fit the slope in log-log
    MassRatio mra = MassRatio::from_mu(0.3);
    SaddleCenterData scda = saddle_center_data(mra);
    LagrangeData laga = lagrange_values(mra);
    double L1a = laga.L[0];
    double hrefa = h2(scda, xs);
    double e1 = std::abs(
        (hamiltonian(mra, phase_from_model(scda, laga.points[0], 1e-3, xs)) - L1a) / 1e-3 - hrefa);
    double e2 = std::abs(
        (hamiltonian(mra, phase_from_model(scda, laga.points[0], 1e-5, xs)) - L1a) / 1e-5 - hrefa);
    double slope = std::log(e1 / e2) / std::log(1e-3 / 1e-5);
    CHECK(slope == doctest::Approx(0.5).epsilon(0.15));
}

TEST_CASE("Liouville field Y2 and transversality margins") {
    SaddleCenterData scd = saddle_center_data(MassRatio::from_mu(0.3));
    double c0 = 1.0;

    // b = 1/2 gives dH2.Y2 = H2 (radial case)
    Vec4 x;
    x << 0.4, -0.2, 0.35, 0.9;
    CHECK(dh2_dot_y2(scd, 0.5, x) == doctest::Approx(h2(scd, x)).epsilon(1e-13));
    // formula matches the field contraction
    for (double b : {0.25, 0.5, 0.75}) {
        Vec4 g = h2_gradient(scd, x);
        CHECK(g.dot(y2_field(b, x)) == doctest::Approx(dh2_dot_y2(scd, b, x)).epsilon(1e-13));
    }

    // x3 = 0 slice of H2^{-1}(c0): margins positive
    double b = 0.35;
    for (double t = 0.0; t < 6.3; t += 0.17) {
        double r = 0.3;
        Vec4 p;
        double x1 = std::sqrt((2 * c0 - scd.lambda2 * r * r) / scd.lambda1);
        p << x1, r * std::cos(t), 0.0, r * std::sin(t);
        CHECK(dh2_dot_y2(scd, b, p) > 0.0);
    }

    // at b = 1/2 a sign change along x3 exists on the level set (1-D scan)
    double c = c0;
    auto margin = [&](double x3) {
        double x1sq = x3 * x3 + 2 * (c - 0.01) / scd.lambda1;  // keep an x2-part of 0.01
        Vec4 p;
        p << std::sqrt(x1sq), std::sqrt(2 * 0.01 / scd.lambda2), x3, 0.0;
        return dh2_dot_y2(scd, 0.5, p);
    };
    CHECK(margin(0.0) > 0.0);
    bool found_negative = false;
    for (double x3 = 0.0; x3 < 50.0; x3 += 0.5)
        if (margin(x3) < 0.0) {
            found_negative = true;
            break;
        }
    // dH2.Y2 = H2 = c on the level set: never negative in the radial case
    CHECK(!found_negative);
    // with b != 1/2 the x3-term dominates eventually
    auto margin_b = [&](double x3) {
        double x1sq = x3 * x3 + 2 * (c - 0.01) / scd.lambda1;
        Vec4 p;
        p << std::sqrt(x1sq), std::sqrt(2 * 0.01 / scd.lambda2), x3, 0.0;
        return dh2_dot_y2(scd, 0.75, p);
    };
    CHECK(margin_b(0.0) > 0.0);
    found_negative = false;
    double sign_change_at = 0.0;
    for (double x3 = 0.0; x3 < 50.0; x3 += 0.05)
        if (margin_b(x3) < 0.0) {
            found_negative = true;
            sign_change_at = x3;
            break;
        }
    CHECK(found_negative);
    CHECK(sign_change_at > 0.0);
}

TEST_CASE("shield ODE: zeros, signs, profile limits, exponential rate") {
    SaddleCenterData scd = saddle_center_data(MassRatio::from_mu(0.5));
    double c0 = 1.0, b = 0.5;
    double r0 = std::sqrt(2.0 * c0 / scd.lambda2);

    CHECK(shield_ode_rhs(scd, c0, b, 0.0) == 0.0);
    CHECK(std::abs(shield_ode_rhs(scd, c0, b, r0)) < 1e-12);
    CHECK(std::abs(shield_ode_rhs(scd, c0, b, -r0)) < 1e-12);
    for (int i = 1; i < 60; ++i) {
        double r = r0 * i / 60.0;
        CHECK(shield_ode_rhs(scd, c0, b, r) > 0.0);
        CHECK(shield_ode_rhs(scd, c0, b, -r) < 0.0);
    }

    ShieldProfile prof = shield_profile(scd, c0, b, 0.3 * r0);
    // r monotone increasing toward r0
    for (size_t i = 1; i < prof.r.size(); ++i) CHECK(prof.r[i] >= prof.r[i - 1] - 1e-12);
    CHECK(std::abs(prof.r.back() - r0) < 2e-10);

    // x1(s)^2 = (2c0 - lambda2 r^2)/lambda1 stays positive and -> 0 forward
    for (size_t i = 0; i < prof.r.size(); ++i) {
        double x1sq = (2 * c0 - scd.lambda2 * prof.r[i] * prof.r[i]) / scd.lambda1;
        CHECK(x1sq > -1e-12);
    }
    CHECK(prof.x1_backward == doctest::Approx(std::sqrt(2 * c0 / scd.lambda1)).epsilon(1e-6));

    // area density limits: forward pi r0^2 = 2 pi c0 / lambda2, backward 0
    CHECK(prof.darea_forward ==
          doctest::Approx(2.0 * std::numbers::pi * c0 / scd.lambda2).epsilon(1e-6));
    CHECK(std::abs(prof.darea_backward) < 1e-6);

    // fitted exponential approach rate within 5% of g'(r0)
    double rate = shield_rate(scd);
    CHECK(std::abs(prof.fitted_rate - rate) / std::abs(rate) < 0.05);

    // negative branch mirrors
    ShieldProfile neg = shield_profile(scd, c0, b, -0.3 * r0);
    CHECK(neg.r.back() == doctest::Approx(-prof.r.back()).epsilon(1e-9));

    CHECK_THROWS_AS((void)shield_profile(scd, c0, b, 1.5 * r0), std::domain_error);
}
