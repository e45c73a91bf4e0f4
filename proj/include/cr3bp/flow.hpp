#pragma once

// Adaptive explicit integration (Dormand-Prince 5(4) with dense output),
// event location on dense output, and joint integration of variational
// equations for Hamiltonian fields.

#include <functional>
#include <vector>

#include "cr3bp/core.hpp"
#include "cr3bp/util.hpp"

namespace cr3bp {

using OdeField = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;

struct EventSpec {
    std::function<double(double, const Eigen::VectorXd&)> fn;
    int direction = 0;  // +1 rising zeros, -1 falling, 0 both
    bool terminal = false;
};

struct EventHit {
    int index;  // which EventSpec fired
    double t;
    Eigen::VectorXd y;
};

struct OdeOptions {
    double rtol = 1e-12;
    double atol = 1e-12;
    double h_init = 1e-4;
    double h_min = 1e-14;
    double h_max = 1.0;
    double event_tol = 1e-11;
    long max_steps = 5000000;
    bool store_dense = true;  // keep every accepted step in the output
};

struct OdeResult {
    std::vector<double> t;
    std::vector<Eigen::VectorXd> y;
    std::vector<EventHit> events;
    bool terminated_by_event = false;
    bool step_underflow = false;  // stopped early; trajectory is partial
    long n_steps = 0;
    long n_rejected = 0;
};

// Integrates y' = f(t,y) from t0 to t1 (either direction).
OdeResult integrate_ode(const OdeField& f, const Eigen::VectorXd& y0, double t0, double t1,
                        const std::vector<EventSpec>& events = {}, const OdeOptions& opts = {});

// Hamiltonian trajectory with optional linearized flow psi(t), psi(t0) = I.
struct Trajectory {
    std::vector<double> t;
    std::vector<Vec4> z;
    std::vector<Mat4> psi;  // empty unless variational
    std::vector<EventHit> events;
    double energy_drift = 0.0;        // max |H(z(t)) - H(z(t0))|
    double max_sympl_defect = 0.0;    // max ||psi^T J psi - J||
    bool terminated_by_event = false;
    bool step_underflow = false;

    const Vec4& front() const { return z.front(); }
    const Vec4& back() const { return z.back(); }
};

// Generic 4-dim Hamiltonian system: a field and its linearization.
struct HamiltonianSystem {
    std::function<Vec4(const Vec4&)> field;
    std::function<Mat4(const Vec4&)> jacobian;                  // J hess(H)
    std::function<double(const Vec4&)> energy;
};

HamiltonianSystem rotating_system(const MassRatio& mr, Frame f);

Trajectory integrate(const HamiltonianSystem& sys, const Vec4& z0, double t0, double t1,
                     const std::vector<EventSpec>& events = {}, bool variational = false,
                     const OdeOptions& opts = {});

// Linearized return map over one period of a closed orbit.
// Throws if the orbit fails to close to `closure_tol`.
Mat4 monodromy(const HamiltonianSystem& sys, const Vec4& z0, double period,
               double closure_tol = 1e-8, const OdeOptions& opts = {});

}  // namespace cr3bp
