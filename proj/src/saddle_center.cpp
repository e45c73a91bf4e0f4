#include "cr3bp/saddle_center.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cr3bp/flow.hpp"

namespace cr3bp {

SaddleCenterData saddle_center_data(const MassRatio& mr) {
    SaddleCenterData d;
    d.mu = mr.mu;
    d.r1 = mr.r1;
    d.a = a_of_r1(mr.r1);

    double a = d.a;
    double disc = std::sqrt(a * (9.0 * a - 4.0));
    d.lambda1 = std::sqrt(a - 1.0 + disc);
    d.lambda2 = std::sqrt(1.0 - a + disc);
    d.C0 = std::sqrt(2.0) * std::pow(a * (9.0 * a - 4.0), 0.25);
    d.C1 = std::sqrt(2.0 + 3.0 * a - disc);
    d.C2 = std::sqrt(2.0 + 3.0 * a + disc);

    double sl1 = std::sqrt(d.lambda1), sl2 = std::sqrt(d.lambda2);
    double C0 = d.C0, C1 = d.C1, C2 = d.C2;
    Mat4 V = Mat4::Zero();
    V(0, 0) = (C2 * C2 + 2.0 * a - 2.0) / (sl1 * C1 * C0);
    V(0, 3) = (C1 * C1 + 2.0 * a - 2.0) / (sl2 * C2 * C0);
    V(1, 1) = sl2 * (C2 * C2 - 2.0) / (C2 * C0);
    V(1, 2) = sl1 * (C1 * C1 - 2.0) / (C1 * C0);
    V(2, 1) = 2.0 * sl2 / (C2 * C0);
    V(2, 2) = 2.0 * sl1 / (C1 * C0);
    V(3, 0) = C1 / (sl1 * C0);
    V(3, 3) = C2 / (sl2 * C0);
    d.V = V;
    d.Vinv = V.inverse();
    return d;
}

double h2(const SaddleCenterData& scd, const Vec4& x) {
    return 0.5 * scd.lambda1 * (x(0) * x(0) - x(2) * x(2)) +
           0.5 * scd.lambda2 * (x(1) * x(1) + x(3) * x(3));
}

Vec4 h2_gradient(const SaddleCenterData& scd, const Vec4& x) {
    Vec4 g;
    g << scd.lambda1 * x(0), scd.lambda2 * x(1), -scd.lambda1 * x(2), scd.lambda2 * x(3);
    return g;
}

Mat4 linear_generator(const SaddleCenterData& scd) {
    Mat4 A = Mat4::Zero();
    A(0, 2) = scd.lambda1;
    A(2, 0) = scd.lambda1;
    A(1, 3) = -scd.lambda2;
    A(3, 1) = scd.lambda2;
    return A;
}

Vec4 linear_lyapunov(const SaddleCenterData& scd, double c0, double t) {
    if (!(c0 > 0.0)) throw std::domain_error("linear_lyapunov: c0 must be positive");
    double r0 = std::sqrt(2.0 * c0 / scd.lambda2);
    Vec4 x;
    x << 0.0, r0 * std::cos(scd.lambda2 * t), 0.0, r0 * std::sin(scd.lambda2 * t);
    return x;
}

Vec4 phase_from_model(const SaddleCenterData& scd, const Vec4& l1, double eps, const Vec4& x) {
    return l1 + std::sqrt(eps) * (scd.V * x);
}

Vec4 model_from_phase(const SaddleCenterData& scd, const Vec4& l1, double eps, const Vec4& z) {
    return scd.Vinv * (z - l1) / std::sqrt(eps);
}

Vec4 y2_field(double b, const Vec4& x) {
    Vec4 y;
    y << (1.0 - b) * x(0), 0.5 * x(1), b * x(2), 0.5 * x(3);
    return y;
}

double dh2_dot_y2(const SaddleCenterData& scd, double b, const Vec4& x) {
    return scd.lambda1 * (1.0 - b) * x(0) * x(0) - scd.lambda1 * b * x(2) * x(2) +
           0.5 * scd.lambda2 * (x(1) * x(1) + x(3) * x(3));
}

double shield_ode_rhs(const SaddleCenterData& scd, double c0, double b, double r) {
    double l1 = scd.lambda1, l2 = scd.lambda2;
    double num = -2.0 * std::numbers::pi * r * (l2 * r * r - 2.0 * c0) *
                 (l1 * r * r + 4.0 * (b - 1.0) * (b - 1.0) * (2.0 * c0 - l2 * r * r));
    double den = 2.0 * c0 + (1.0 - 2.0 * b) * (2.0 * c0 - l2 * r * r);
    return num / (den * den);
}

double shield_rate(const SaddleCenterData& scd) {
    return -4.0 * std::numbers::pi * scd.lambda1 / scd.lambda2;
}

ShieldProfile shield_profile(const SaddleCenterData& scd, double c0, double b, double r_init) {
    double r0 = std::sqrt(2.0 * c0 / scd.lambda2);
    if (!(std::abs(r_init) > 0.0 && std::abs(r_init) < r0))
        throw std::domain_error("shield_profile: r_init must lie in (-r0, r0) \\ {0}");
    double sign = r_init > 0 ? 1.0 : -1.0;
    r_init = std::abs(r_init);

    ShieldProfile prof;
    prof.c0 = c0;
    prof.b = b;
    prof.r0 = r0;

    OdeField f = [&](double, const Eigen::VectorXd& y) {
        Eigen::VectorXd dy(2);
        dy(0) = shield_ode_rhs(scd, c0, b, y(0));
        dy(1) = std::numbers::pi * y(0) * y(0);
        return dy;
    };
    OdeOptions opts;
    opts.rtol = 1e-13;
    opts.atol = 1e-14;
    opts.h_max = 10.0;

    // forward until r0 - r < 1e-10
    Eigen::VectorXd y0(2);
    y0 << r_init, 0.0;
    std::vector<EventSpec> ev(1);
    ev[0].fn = [r0](double, const Eigen::VectorXd& y) { return (r0 - y(0)) - 1e-10; };
    ev[0].direction = -1;
    ev[0].terminal = true;
    OdeResult fwd = integrate_ode(f, y0, 0.0, 1e4, ev, opts);
    for (size_t i = 0; i < fwd.t.size(); ++i) {
        prof.s.push_back(fwd.t[i]);
        prof.r.push_back(sign * fwd.y[i](0));
        prof.area.push_back(fwd.y[i](1));
    }
    prof.darea_forward = std::numbers::pi * fwd.y.back()(0) * fwd.y.back()(0);

    // backward until r < 1e-10 (removable end)
    ev[0].fn = [](double, const Eigen::VectorXd& y) { return y(0) - 1e-10; };
    ev[0].direction = -1;
    OdeResult bwd = integrate_ode(f, y0, 0.0, -1e4, ev, opts);
    for (size_t i = 0; i < bwd.t.size(); ++i) {
        prof.s_back.push_back(bwd.t[i]);
        prof.r_back.push_back(sign * bwd.y[i](0));
        prof.area_back.push_back(bwd.y[i](1));
    }
    prof.darea_backward = std::numbers::pi * bwd.y.back()(0) * bwd.y.back()(0);
    double x1sq = (2.0 * c0 - scd.lambda2 * bwd.y.back()(0) * bwd.y.back()(0)) / scd.lambda1;
    prof.x1_backward = std::sqrt(std::max(0.0, x1sq));

    // Fit log(r0 - r) ~ rate * s over the exponential tail.
    std::vector<double> xs, ys;
    for (size_t i = 0; i < prof.s.size(); ++i) {
        double gap = r0 - std::abs(prof.r[i]);
        if (gap > 1e-9 && gap < 0.05 * r0) {
            xs.push_back(prof.s[i]);
            ys.push_back(std::log(gap));
        }
    }
    if (xs.size() >= 2) {
        double n = static_cast<double>(xs.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        prof.fitted_rate = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return prof;
}

}  // namespace cr3bp
