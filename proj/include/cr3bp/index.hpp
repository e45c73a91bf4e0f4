#pragma once

// Robbin-Salamon and Conley-Zehnder indices of symplectic paths, the
// geometric rotation-interval definition, rotation numbers of iterates,
// non-negative paths to a prescribed endpoint, and index bounds for the
// linearized saddle-center flow.

#include <functional>
#include <optional>
#include <vector>

#include "cr3bp/flow.hpp"
#include "cr3bp/saddle_center.hpp"
#include "cr3bp/util.hpp"

namespace cr3bp {

// Time-sampled path psi(t) in Sp(2n) together with its generator samples
// S(t) = -J psidot psi^{-1}. Evaluation between samples uses cubic Hermite
// interpolation with derivatives psidot = J S psi.
struct SymplecticPath {
    std::vector<double> t;
    std::vector<Eigen::MatrixXd> psi;
    std::vector<Eigen::MatrixXd> S;

    int dim() const { return psi.empty() ? 0 : static_cast<int>(psi.front().rows()); }
    double t0() const { return t.front(); }
    double t1() const { return t.back(); }

    Eigen::MatrixXd psi_at(double time) const;
    Eigen::MatrixXd S_at(double time) const;

    double max_symplectic_defect() const;
    double max_generator_asymmetry() const;

    SymplecticPath restricted(double a, double b, int n_samples = 0) const;
};

Eigen::MatrixXd symplectic_J(int dim);

// Samples psi(t) = exp((t-a) J S0) psi0 for a constant generator.
SymplecticPath constant_generator_path(const Eigen::MatrixXd& S0, const Eigen::MatrixXd& psi0,
                                       double a, double b, int n_samples = 2048);

// Plane rotation path psi(t) = R(2 pi rho t) psi0 on [a,b].
SymplecticPath rotation_path(double rho, double a, double b,
                             const Mat2& psi0 = Mat2::Identity(), int n_samples = 2048);

// Linearized-flow path along a Hamiltonian trajectory: psi(t) = Dphi_t psi0.
SymplecticPath linearized_flow_path(const HamiltonianSystem& sys, const Vec4& z0, double T,
                                    const Mat4& psi0 = Mat4::Identity(),
                                    const OdeOptions& opts = {});

struct Crossing {
    double t;
    int kernel_dim;
    int signature;
    bool boundary;   // t is an endpoint of the path
    bool degenerate;  // crossing form had a near-zero eigenvalue
};

// All zeros of det(I - psi(t)), including tangential ones.
std::vector<Crossing> find_crossings(const SymplecticPath& path);

// Signature of S(t0) restricted to ker(I - psi(t0)); throws on a
// degenerate form.
int crossing_signature(const SymplecticPath& path, double t0);

// Robbin-Salamon index: half sum at boundary crossings plus interior sum.
// Degenerate crossings are regularized by shrinking the window by delta and
// retrying (up to 3 attempts).
double robbin_salamon(const SymplecticPath& path);

// Geometric Conley-Zehnder index of a nondegenerate Sp(2) path with
// psi(a) = I, via the rotation interval I_P.
struct RotationInterval {
    double lo, hi;  // interval of Delta(v0) over all directions
};
RotationInterval rotation_interval(const SymplecticPath& path2d);
int conley_zehnder_geometric(const SymplecticPath& path2d);

// rho(P) = lim mu(P^k)/(2k) over iterates of a closed-orbit linearization.
struct RotationNumberResult {
    double rho;
    double fit_residual;  // max deviation of mu_k from the linear model
    std::vector<double> mu_k;
};
RotationNumberResult rotation_number(const SymplecticPath& period_path, int k_max = 24);

// Transverse-plane reduction of an orbit's linearized flow and its CZ index.
// grad must return the ambient Hamiltonian gradient.
struct OrbitIndexResult {
    int index;
    RotationInterval interval;
    double frame_jump;  // largest frame angle jump between samples
};
OrbitIndexResult orbit_index(const HamiltonianSystem& sys,
                             const std::function<Vec4(const Vec4&)>& grad, const Vec4& z0,
                             double period, int n_samples = 1200, const OdeOptions& opts = {});

// Non-negative path from I to a semi-simple M (Sp(2) or Sp(4)):
// -J betadot beta^{-1} >= 0 along the path and n <= mu_RS <= 2n.
struct NonnegPath {
    SymplecticPath path;
    double min_generator_eigenvalue;
    double mu_rs;
};
NonnegPath nonneg_path(const Eigen::MatrixXd& M, int n_samples = 4096);

// 2 floor(lambda2 (b-a)/(2 pi)) - 1, the saddle-center lower bound.
int saddle_center_bound(const SaddleCenterData& scd, double a, double b);

}  // namespace cr3bp
