#include "cr3bp/core.hpp"

#include <cmath>
#include <stdexcept>

namespace cr3bp {

namespace {
constexpr double kCollisionGuard = 1e-9;

double r1_residual(double mu, double r) {
    double om = 1.0 - mu;
    return om / ((1.0 - r) * (1.0 - r)) - mu / (r * r) - (om - r);
}
}  // namespace

double mu_of_r1(double r1) {
    double num = r1 * r1 * r1 * (3.0 - 3.0 * r1 + r1 * r1);
    double den = 1.0 - 2.0 * r1 + r1 * r1 + 2.0 * r1 * r1 * r1 - r1 * r1 * r1 * r1;
    return num / den;
}

double lagrange_r1(double mu) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::domain_error("lagrange_r1: mu must be in (0,1)");
    // residual is -inf at 0+ and +inf at 1-, with a unique zero
    double lo = 1e-6, hi = 1.0 - 1e-6;
    double r = bisect([mu](double x) { return r1_residual(mu, x); }, lo, hi, 1e-15);
    // Newton polish
    for (int i = 0; i < 8; ++i) {
        double om = 1.0 - mu;
        double f = r1_residual(mu, r);
        double df = 2.0 * om / std::pow(1.0 - r, 3) + 2.0 * mu / std::pow(r, 3) + 1.0;
        double step = f / df;
        r -= step;
        if (std::abs(step) < 1e-16) break;
    }
    return r;
}

double a_of_r1(double r1) {
    double num = 2.0 - r1 + r1 * r1;
    double den = 1.0 - 2.0 * r1 + r1 * r1 + 2.0 * r1 * r1 * r1 - r1 * r1 * r1 * r1;
    return num / den;
}

MassRatio MassRatio::from_mu(double mu) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::domain_error("MassRatio: mu must be in (0,1)");
    return {mu, lagrange_r1(mu)};
}

MassRatio MassRatio::from_r1(double r1) {
    if (!(r1 > 0.0 && r1 < 1.0)) throw std::domain_error("MassRatio: r1 must be in (0,1)");
    return {mu_of_r1(r1), r1};
}

double earth_pos(Frame f, double mu) {
    switch (f) {
        case Frame::Standard: return -mu;
        case Frame::Shifted: return 0.0;
        case Frame::Symmetric: return -0.5;
    }
    return -mu;
}

Vec4 convert_frame(const Vec4& z, Frame from, Frame to, double mu) {
    double d = earth_pos(to, mu) - earth_pos(from, mu);
    Vec4 w = z;
    w(2) += d;  // q1
    w(1) -= d;  // p2 compensates the q1 p2 coupling
    return w;
}

PotentialEval effective_potential(const MassRatio& mr, const Vec2& q, Frame f) {
    double mu = mr.mu;
    Vec2 e{earth_pos(f, mu), 0.0};
    Vec2 m{moon_pos(f, mu), 0.0};
    Vec2 c{earth_pos(f, mu) + mu, 0.0};

    Vec2 de = q - e;
    Vec2 dm = q - m;
    double re = de.norm();
    double rm = dm.norm();
    if (re < kCollisionGuard || rm < kCollisionGuard)
        throw std::domain_error("effective_potential: collision with a primary");

    double om = 1.0 - mu;
    Vec2 dc = q - c;

    PotentialEval out;
    out.U = -mu / rm - om / re - 0.5 * dc.squaredNorm();

    double re3 = re * re * re, rm3 = rm * rm * rm;
    out.grad = mu * dm / rm3 + om * de / re3 - dc;

    double re5 = re3 * re * re, rm5 = rm3 * rm * rm;
    Mat2 hess = mu * (Mat2::Identity() / rm3 - 3.0 * dm * dm.transpose() / rm5) +
                om * (Mat2::Identity() / re3 - 3.0 * de * de.transpose() / re5);
    out.hess = hess - Mat2::Identity();
    return out;
}

double hamiltonian(const MassRatio& mr, const Vec4& z, Frame f) {
    RotatingState s = RotatingState::from_z(z);
    Vec2 qd = s.qdot();
    return 0.5 * qd.squaredNorm() + effective_potential(mr, s.q, f).U;
}

Vec4 hamiltonian_gradient(const MassRatio& mr, const Vec4& z, Frame f) {
    RotatingState s = RotatingState::from_z(z);
    auto pot = effective_potential(mr, s.q, f);
    double a = s.p(0) - s.q(1);  // p1 - q2
    double b = s.p(1) + s.q(0);  // p2 + q1
    Vec4 g;
    g << a, b, pot.grad(0) + b, pot.grad(1) - a;
    return g;
}

Mat4 hamiltonian_hessian(const MassRatio& mr, const Vec4& z, Frame f) {
    RotatingState s = RotatingState::from_z(z);
    auto pot = effective_potential(mr, s.q, f);
    Mat4 H = Mat4::Zero();
    H.block<2, 2>(0, 0) = Mat2::Identity();
    H.block<2, 2>(0, 2) = J2();
    H.block<2, 2>(2, 0) = J2().transpose();
    // hess(U0) = hess(U) + I
    H.block<2, 2>(2, 2) = pot.hess + Mat2::Identity();
    return H;
}

Vec4 vector_field(const MassRatio& mr, const Vec4& z, Frame f) {
    return J4() * hamiltonian_gradient(mr, z, f);
}

Mat4 field_jacobian(const MassRatio& mr, const Vec4& z, Frame f) {
    return J4() * hamiltonian_hessian(mr, z, f);
}

double lagrange_value_l1(const MassRatio& mr) {
    double mu = mr.mu, r1 = mr.r1;
    double l = 1.0 - mu - r1;
    return -mu / r1 - (1.0 - mu) / (1.0 - r1) - 0.5 * l * l;
}

namespace {

// Equilibrium phase point above a position-space critical point q.
// qdot = 0 forces p = (q2, -q1).
Vec4 equilibrium_point(const Vec2& q) {
    Vec4 z;
    z << q(1), -q(0), q(0), q(1);
    return z;
}

// Root of dU/dx on the q1-axis within (lo, hi), located by sign scan +
// bisection + Newton. The collinear critical equations have no closed
// form away from l1.
double axis_critical_point(const MassRatio& mr, double lo, double hi) {
    auto dU = [&](double x) { return effective_potential(mr, Vec2{x, 0.0}).grad(0); };
    const int kScan = 400;
    double prev_x = lo, prev_f = dU(lo);
    double root = std::numeric_limits<double>::quiet_NaN();
    for (int i = 1; i <= kScan; ++i) {
        double x = lo + (hi - lo) * i / kScan;
        double fx = dU(x);
        if (prev_f == 0.0) return prev_x;
        if ((prev_f > 0) != (fx > 0)) {
            root = bisect(dU, prev_x, x, 1e-15);
            break;
        }
        prev_x = x;
        prev_f = fx;
    }
    if (!std::isfinite(root)) throw std::runtime_error("collinear critical point not bracketed");
    for (int i = 0; i < 8; ++i) {
        auto pot = effective_potential(mr, Vec2{root, 0.0});
        double step = pot.grad(0) / pot.hess(0, 0);
        root -= step;
        if (std::abs(step) < 1e-16) break;
    }
    return root;
}

}  // namespace

LagrangeData lagrange_values(const MassRatio& mr) {
    double mu = mr.mu;
    LagrangeData out;
    out.r1 = mr.r1;
    out.lhat1 = 1.0 - mu - mr.r1;

    // l1 between the primaries, from r1.
    Vec2 q1{out.lhat1, 0.0};
    // Collinear points beyond each primary.
    double right = axis_critical_point(mr, 1.0 - mu + 1e-5, 2.5);
    double left = axis_critical_point(mr, -2.5, -mu - 1e-5);
    // Equilateral points.
    Vec2 q4{0.5 - mu, std::sqrt(3.0) / 2.0};
    Vec2 q5{0.5 - mu, -std::sqrt(3.0) / 2.0};

    auto value_at = [&](const Vec2& q) { return effective_potential(mr, q).U; };

    double Lr = value_at(Vec2{right, 0.0});
    double Ll = value_at(Vec2{left, 0.0});
    // Convention L2 <= L3; the points swap roles as mu crosses 1/2.
    Vec2 q2{right, 0.0}, q3{left, 0.0};
    double L2 = Lr, L3 = Ll;
    if (L2 > L3) {
        std::swap(L2, L3);
        std::swap(q2, q3);
    }

    out.L = {value_at(q1), L2, L3, value_at(q4), value_at(q5)};
    out.points = {equilibrium_point(q1), equilibrium_point(q2), equilibrium_point(q3),
                  equilibrium_point(q4), equilibrium_point(q5)};
    return out;
}

HillQuery hill_region_contains(const MassRatio& mr, double h, const Vec2& q, Frame f) {
    double U = effective_potential(mr, q, f).U;
    return {U <= h, h - U};
}

}  // namespace cr3bp
