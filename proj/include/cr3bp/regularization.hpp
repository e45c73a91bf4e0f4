#pragma once

// Elliptic-hyperbolic regularization of binary collisions. Works in the
// symmetric frame (primaries at -1/2 and +1/2):
//   q1 = cosh(x1) cos(x2)/2,  q2 = sinh(x1) sin(x2)/2,  p = A(x) y.
// The regularized Hamiltonian
//   Hhat(y,x) = |y + F(x)|^2/2 + V(x) + (1-2mu) Vhat(x),
//   F(x) = (sin(2 x2), sinh(2 x1))/8,
// is smooth on R^2 x (R x R/2piZ); its zero level corresponds to
// Hbar^{-1}(h) up to the time change dt/dsigma = (cosh^2 x1 - cos^2 x2)/4.
// Regularized phase points are ordered w = (y1, y2, x1, x2).

#include "cr3bp/core.hpp"
#include "cr3bp/flow.hpp"
#include "cr3bp/util.hpp"

namespace cr3bp {

struct RegularizedState {
    Vec2 y;
    Vec2 x;  // x(1) normalized to [0, 2pi)

    Vec4 w() const {
        Vec4 v;
        v << y(0), y(1), x(0), x(1);
        return v;
    }
    static RegularizedState from_w(const Vec4& v);
};

struct RegularizedParams {
    MassRatio mr;
    double h;  // energy level of the underlying rotating-frame problem
};

// Chart maps (z in the symmetric frame). to_regularized picks x1 >= 0; the
// double cover identifies (y,x) ~ -(y,x).
Vec4 to_regularized(const MassRatio& mr, const Vec4& z_symmetric);
Vec4 from_regularized(const MassRatio& mr, const Vec4& w);

double flow_correspondence_factor(double x1, double x2);

double hat_hamiltonian(const RegularizedParams& par, const Vec4& w);
Vec4 hat_gradient(const RegularizedParams& par, const Vec4& w);
Mat4 hat_hessian(const RegularizedParams& par, const Vec4& w);

HamiltonianSystem regularized_system(const RegularizedParams& par);

// Decoupled mu = 1/2 potential split V = W1(x1) + W2(x2) with derivatives.
struct CopenhagenSplit {
    double W1, dW1, ddW1;
    double W2, dW2, ddW2;
};
CopenhagenSplit copenhagen_split(double h, double x1, double x2);

// Regularized trajectory with the physical time t(sigma) co-integrated.
struct CorrespondenceSample {
    double sigma;
    double t;
    Vec4 w;
    Vec4 z_symmetric;
};
std::vector<CorrespondenceSample> correspondence_trajectory(const RegularizedParams& par,
                                                            const Vec4& w0, double sigma_end,
                                                            const OdeOptions& opts = {});

}  // namespace cr3bp
