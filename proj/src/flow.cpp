#include "cr3bp/flow.hpp"

#include <cmath>
#include <stdexcept>

namespace cr3bp {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
// b - bhat
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output weights
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

struct DenseSegment {
    double t0, h;
    Eigen::VectorXd r1, r2, r3, r4, r5;

    Eigen::VectorXd eval(double t) const {
        double th = (t - t0) / h;
        double th1 = 1.0 - th;
        return r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
    }
};

}  // namespace

OdeResult integrate_ode(const OdeField& f, const Eigen::VectorXd& y0, double t0, double t1,
                        const std::vector<EventSpec>& events, const OdeOptions& opts) {
    OdeResult out;
    const long n = y0.size();
    double dir = (t1 >= t0) ? 1.0 : -1.0;
    double t = t0;
    Eigen::VectorXd y = y0;
    Eigen::VectorXd k1 = f(t, y), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);

    out.t.push_back(t);
    out.y.push_back(y);

    std::vector<double> ev_prev(events.size());
    for (size_t i = 0; i < events.size(); ++i) ev_prev[i] = events[i].fn(t, y);

    double h = dir * std::min(opts.h_init, opts.h_max);
    bool done = false;
    while (!done) {
        if (++out.n_steps > opts.max_steps) {
            out.step_underflow = true;
            break;
        }
        if (dir * (t + h - t1) > 0.0) h = t1 - t;
        if (std::abs(h) < opts.h_min) {
            out.step_underflow = true;
            break;
        }

        Eigen::VectorXd yt;
        yt = y + h * (a21 * k1);
        k2 = f(t + c2 * h, yt);
        yt = y + h * (a31 * k1 + a32 * k2);
        k3 = f(t + c3 * h, yt);
        yt = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        k4 = f(t + c4 * h, yt);
        yt = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        k5 = f(t + c5 * h, yt);
        yt = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        k6 = f(t + h, yt);
        Eigen::VectorXd ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        k7 = f(t + h, ynew);

        Eigen::VectorXd errv = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double err = 0.0;
        for (long i = 0; i < n; ++i) {
            double sc = opts.atol + opts.rtol * std::max(std::abs(y(i)), std::abs(ynew(i)));
            double q = errv(i) / sc;
            err += q * q;
        }
        err = std::sqrt(err / n);

        if (err > 1.0) {
            ++out.n_rejected;
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            continue;
        }

        // accepted
        DenseSegment seg;
        seg.t0 = t;
        seg.h = h;
        seg.r1 = y;
        seg.r2 = ynew - y;
        seg.r3 = h * k1 - seg.r2;
        seg.r4 = seg.r2 - h * k7 - seg.r3;
        seg.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

        double tnew = t + h;
        bool stop_here = false;
        double t_stop = tnew;

        for (size_t i = 0; i < events.size(); ++i) {
            double g0 = ev_prev[i];
            double g1 = events[i].fn(tnew, ynew);
            bool crossed = (g0 != 0.0) && (g1 == 0.0 || (g0 > 0) != (g1 > 0));
            if (crossed) {
                bool ok_dir = true;
                if (events[i].direction > 0) ok_dir = g0 < 0.0;
                if (events[i].direction < 0) ok_dir = g0 > 0.0;
                if (ok_dir) {
                    double lo = t, hi = tnew;
                    double glo = g0;
                    for (int it = 0; it < 200 && std::abs(hi - lo) > opts.event_tol; ++it) {
                        double mid = 0.5 * (lo + hi);
                        double gm = events[i].fn(mid, seg.eval(mid));
                        if (gm == 0.0) {
                            lo = hi = mid;
                            break;
                        }
                        if ((gm > 0) == (glo > 0)) {
                            lo = mid;
                            glo = gm;
                        } else {
                            hi = mid;
                        }
                    }
                    double te = 0.5 * (lo + hi);
                    EventHit hit{static_cast<int>(i), te, seg.eval(te)};
                    out.events.push_back(hit);
                    if (events[i].terminal && (!stop_here || dir * (te - t_stop) < 0.0)) {
                        stop_here = true;
                        t_stop = te;
                    }
                }
            }
            ev_prev[i] = g1;
        }

        if (stop_here) {
            // drop later non-terminal hits from this step
            while (!out.events.empty() && dir * (out.events.back().t - t_stop) > 1e-15)
                out.events.pop_back();
            t = t_stop;
            y = seg.eval(t_stop);
            out.t.push_back(t);
            out.y.push_back(y);
            out.terminated_by_event = true;
            break;
        }

        t = tnew;
        y = ynew;
        k1 = k7;  // FSAL
        if (opts.store_dense) {
            out.t.push_back(t);
            out.y.push_back(y);
        }
        if (t == t1) done = true;
        h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-16), -0.2)));
        if (std::abs(h) > opts.h_max) h = dir * opts.h_max;
    }
    if (!opts.store_dense) {
        if (out.t.back() != t) {
            out.t.push_back(t);
            out.y.push_back(y);
        }
    }
    return out;
}

HamiltonianSystem rotating_system(const MassRatio& mr, Frame f) {
    HamiltonianSystem sys;
    sys.field = [mr, f](const Vec4& z) { return vector_field(mr, z, f); };
    sys.jacobian = [mr, f](const Vec4& z) { return field_jacobian(mr, z, f); };
    sys.energy = [mr, f](const Vec4& z) { return hamiltonian(mr, z, f); };
    return sys;
}

Trajectory integrate(const HamiltonianSystem& sys, const Vec4& z0, double t0, double t1,
                     const std::vector<EventSpec>& events, bool variational,
                     const OdeOptions& opts) {
    const long dim = variational ? 20 : 4;
    Eigen::VectorXd y0(dim);
    y0.head<4>() = z0;
    if (variational) {
        Mat4 I = Mat4::Identity();
        y0.tail<16>() = Eigen::Map<const Eigen::VectorXd>(I.data(), 16);
    }

    OdeField f = [&sys, variational](double, const Eigen::VectorXd& y) {
        Vec4 z = y.head<4>();
        Eigen::VectorXd dy(y.size());
        dy.head<4>() = sys.field(z);
        if (variational) {
            Mat4 psi = Eigen::Map<const Mat4>(y.tail<16>().data());
            Mat4 dpsi = sys.jacobian(z) * psi;
            dy.tail<16>() = Eigen::Map<const Eigen::VectorXd>(dpsi.data(), 16);
        }
        return dy;
    };

    OdeResult r = integrate_ode(f, y0, t0, t1, events, opts);

    Trajectory traj;
    traj.t = r.t;
    traj.events = std::move(r.events);
    traj.terminated_by_event = r.terminated_by_event;
    traj.step_underflow = r.step_underflow;
    traj.z.reserve(r.y.size());
    double H0 = sys.energy(z0);
    for (const auto& y : r.y) {
        Vec4 z = y.head<4>();
        traj.z.push_back(z);
        traj.energy_drift = std::max(traj.energy_drift, std::abs(sys.energy(z) - H0));
        if (variational) {
            Mat4 psi = Eigen::Map<const Mat4>(y.tail<16>().data());
            traj.psi.push_back(psi);
            traj.max_sympl_defect = std::max(traj.max_sympl_defect, symplectic_defect_rel(psi));
        }
    }
    return traj;
}

Mat4 monodromy(const HamiltonianSystem& sys, const Vec4& z0, double period, double closure_tol,
               const OdeOptions& opts) {
    Trajectory traj = integrate(sys, z0, 0.0, period, {}, true, opts);
    if (traj.step_underflow) throw std::runtime_error("monodromy: integration failed");
    double closure = (traj.back() - z0).norm();
    if (closure > closure_tol)
        throw std::runtime_error("monodromy: orbit not closed, residual " +
                                 format_double(closure));
    return traj.psi.back();
}

}  // namespace cr3bp
