#include "cr3bp/regularization.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace cr3bp {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_2pi(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    return a;
}
}  // namespace

RegularizedState RegularizedState::from_w(const Vec4& v) {
    RegularizedState s;
    s.y = {v(0), v(1)};
    s.x = {v(2), wrap_2pi(v(3))};
    return s;
}

double flow_correspondence_factor(double x1, double x2) {
    double ch = std::cosh(x1), c = std::cos(x2);
    return 0.25 * (ch * ch - c * c);
}

Vec4 to_regularized(const MassRatio& mr, const Vec4& z) {
    (void)mr;
    std::complex<double> q{z(2), z(3)};
    std::complex<double> zc = std::acosh(2.0 * q);
    double x1 = zc.real();
    double x2 = wrap_2pi(zc.imag());
    double delta = std::cosh(x1) * std::cosh(x1) - std::cos(x2) * std::cos(x2);
    if (delta < 1e-12)
        throw std::domain_error("to_regularized: collision set (degenerate Jacobian)");
    double s1 = std::sinh(x1), c1 = std::cosh(x1), s2 = std::sin(x2), c2 = std::cos(x2);
    // y = A(x)^{-1} p
    Vec2 p{z(0), z(1)};
    Vec2 y;
    y(0) = 0.5 * (s1 * c2 * p(0) + c1 * s2 * p(1));
    y(1) = 0.5 * (-c1 * s2 * p(0) + s1 * c2 * p(1));
    Vec4 w;
    w << y(0), y(1), x1, x2;
    return w;
}

Vec4 from_regularized(const MassRatio& mr, const Vec4& w) {
    (void)mr;
    double x1 = w(2), x2 = w(3);
    double s1 = std::sinh(x1), c1 = std::cosh(x1), s2 = std::sin(x2), c2 = std::cos(x2);
    double delta = c1 * c1 - c2 * c2;
    if (delta < 1e-12)
        throw std::domain_error("from_regularized: collision set (degenerate Jacobian)");
    Vec2 y{w(0), w(1)};
    Vec2 p;
    p(0) = 2.0 / delta * (s1 * c2 * y(0) - c1 * s2 * y(1));
    p(1) = 2.0 / delta * (c1 * s2 * y(0) + s1 * c2 * y(1));
    Vec4 z;
    z << p(0), p(1), 0.5 * c1 * c2, 0.5 * s1 * s2;
    return z;
}

namespace {

struct PotentialParts {
    double V, V1, V2, V11, V22;         // decoupled part and derivatives
    double Vh, Vh1, Vh2, Vh11, Vh12, Vh22;  // Vhat part
};

PotentialParts potential_parts(double mu, double h, double x1, double x2) {
    PotentialParts o;
    double c1 = std::cosh(x1), s1 = std::sinh(x1);
    double c2 = std::cos(x2), s2 = std::sin(x2);
    double sh2 = std::sinh(2.0 * x1), ch2 = std::cosh(2.0 * x1);
    double sn2 = std::sin(2.0 * x2), cs2 = std::cos(2.0 * x2);
    double ch4 = std::cosh(4.0 * x1), cs4 = std::cos(4.0 * x2);

    o.V = -h * c1 * c1 / 4.0 - c1 / 2.0 - sh2 * sh2 / 128.0 + h * c2 * c2 / 4.0 -
          sn2 * sn2 / 128.0;
    o.V1 = -h / 4.0 * sh2 - s1 / 2.0 - std::sinh(4.0 * x1) / 64.0;
    o.V2 = -h / 4.0 * sn2 - std::sin(4.0 * x2) / 64.0;
    o.V11 = -(8.0 * h * ch2 + 8.0 * c1 + ch4) / 16.0;
    o.V22 = -(8.0 * h * cs2 + cs4) / 16.0;

    double k = 0.5 - mu;
    double dd = c1 * c1 - c2 * c2;
    o.Vh = c2 / 2.0 - (k + c1 * c2) * dd / 16.0;
    o.Vh1 = -(s1 * c2 * dd + (k + c1 * c2) * 2.0 * c1 * s1) / 16.0;
    o.Vh2 = -s2 / 2.0 - (-c1 * s2 * dd + (k + c1 * c2) * 2.0 * c2 * s2) / 16.0;
    o.Vh11 = -(c1 * c2 * dd + 4.0 * s1 * s1 * c1 * c2 + (k + c1 * c2) * 2.0 * ch2) / 16.0;
    o.Vh22 = -c2 / 2.0 - (-c1 * c2 * dd - 4.0 * c1 * c2 * s2 * s2 + (k + c1 * c2) * 2.0 * cs2) / 16.0;
    o.Vh12 = 3.0 / 16.0 * s1 * s2 * dd;
    return o;
}

}  // namespace

double hat_hamiltonian(const RegularizedParams& par, const Vec4& w) {
    double x1 = w(2), x2 = w(3);
    double f1 = std::sin(2.0 * x2) / 8.0, f2 = std::sinh(2.0 * x1) / 8.0;
    auto pp = potential_parts(par.mr.mu, par.h, x1, x2);
    double a = w(0) + f1, b = w(1) + f2;
    return 0.5 * (a * a + b * b) + pp.V + (1.0 - 2.0 * par.mr.mu) * pp.Vh;
}

Vec4 hat_gradient(const RegularizedParams& par, const Vec4& w) {
    double x1 = w(2), x2 = w(3);
    double f1 = std::sin(2.0 * x2) / 8.0, f2 = std::sinh(2.0 * x1) / 8.0;
    double df1 = std::cos(2.0 * x2) / 4.0, df2 = std::cosh(2.0 * x1) / 4.0;
    auto pp = potential_parts(par.mr.mu, par.h, x1, x2);
    double m = 1.0 - 2.0 * par.mr.mu;
    double a = w(0) + f1, b = w(1) + f2;
    Vec4 g;
    g << a, b, b * df2 + pp.V1 + m * pp.Vh1, a * df1 + pp.V2 + m * pp.Vh2;
    return g;
}

Mat4 hat_hessian(const RegularizedParams& par, const Vec4& w) {
    double x1 = w(2), x2 = w(3);
    double f1 = std::sin(2.0 * x2) / 8.0, f2 = std::sinh(2.0 * x1) / 8.0;
    double df1 = std::cos(2.0 * x2) / 4.0, df2 = std::cosh(2.0 * x1) / 4.0;
    double ddf1 = -std::sin(2.0 * x2) / 2.0, ddf2 = std::sinh(2.0 * x1) / 2.0;
    auto pp = potential_parts(par.mr.mu, par.h, x1, x2);
    double m = 1.0 - 2.0 * par.mr.mu;
    double a = w(0) + f1, b = w(1) + f2;

    Mat4 H = Mat4::Zero();
    H(0, 0) = 1.0;
    H(1, 1) = 1.0;
    H(0, 3) = H(3, 0) = df1;
    H(1, 2) = H(2, 1) = df2;
    H(2, 2) = df2 * df2 + b * ddf2 + pp.V11 + m * pp.Vh11;
    H(3, 3) = df1 * df1 + a * ddf1 + pp.V22 + m * pp.Vh22;
    H(2, 3) = H(3, 2) = m * pp.Vh12;
    return H;
}

HamiltonianSystem regularized_system(const RegularizedParams& par) {
    HamiltonianSystem sys;
    sys.field = [par](const Vec4& w) -> Vec4 { return J4() * hat_gradient(par, w); };
    sys.jacobian = [par](const Vec4& w) -> Mat4 { return J4() * hat_hessian(par, w); };
    sys.energy = [par](const Vec4& w) { return hat_hamiltonian(par, w); };
    return sys;
}

CopenhagenSplit copenhagen_split(double h, double x1, double x2) {
    CopenhagenSplit s;
    double c1 = std::cosh(x1), sh1 = std::sinh(x1);
    double c2 = std::cos(x2);
    double sh2 = std::sinh(2.0 * x1), sn2 = std::sin(2.0 * x2);
    s.W1 = -h * c1 * c1 / 4.0 - c1 / 2.0 - sh2 * sh2 / 128.0;
    s.dW1 = -h / 4.0 * sh2 - sh1 / 2.0 - std::sinh(4.0 * x1) / 64.0;
    s.ddW1 = -(8.0 * h * std::cosh(2.0 * x1) + 8.0 * c1 + std::cosh(4.0 * x1)) / 16.0;
    s.W2 = h * c2 * c2 / 4.0 - sn2 * sn2 / 128.0;
    s.dW2 = -h / 4.0 * sn2 - std::sin(4.0 * x2) / 64.0;
    s.ddW2 = -(8.0 * h * std::cos(2.0 * x2) + std::cos(4.0 * x2)) / 16.0;
    return s;
}

std::vector<CorrespondenceSample> correspondence_trajectory(const RegularizedParams& par,
                                                            const Vec4& w0, double sigma_end,
                                                            const OdeOptions& opts) {
    OdeField f = [&par](double, const Eigen::VectorXd& y) {
        Vec4 w = y.head<4>();
        Eigen::VectorXd dy(5);
        dy.head<4>() = J4() * hat_gradient(par, w);
        dy(4) = flow_correspondence_factor(w(2), w(3));
        return dy;
    };
    Eigen::VectorXd y0(5);
    y0.head<4>() = w0;
    y0(4) = 0.0;
    OdeResult r = integrate_ode(f, y0, 0.0, sigma_end, {}, opts);
    std::vector<CorrespondenceSample> out;
    out.reserve(r.t.size());
    for (size_t i = 0; i < r.t.size(); ++i) {
        CorrespondenceSample cs;
        cs.sigma = r.t[i];
        cs.t = r.y[i](4);
        cs.w = r.y[i].head<4>();
        cs.z_symmetric = from_regularized(par.mr, cs.w);
        out.push_back(cs);
    }
    return out;
}

}  // namespace cr3bp
