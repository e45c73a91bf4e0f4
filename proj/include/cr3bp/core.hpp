#pragma once

// Rotating-frame dynamics of the planar circular restricted three-body
// problem: effective potential, Hamiltonian, Lagrange points and Hill
// regions. Phase points are ordered z = (p1, p2, q1, q2) and satisfy
// zdot = J grad(H).

#include <array>
#include <optional>

#include "cr3bp/util.hpp"

namespace cr3bp {

// Mass parameter together with the collinear-point distance r1 in (0,1).
// r1 is the distance from l1 to the lighter primary ("moon"); mu and r1
// determine each other through a closed-form rational map.
struct MassRatio {
    double mu;
    double r1;

    static MassRatio from_mu(double mu);
    static MassRatio from_r1(double r1);
};

// Closed-form inverse mu(r1).
double mu_of_r1(double r1);

// Solves (1-mu)/(1-r)^2 - mu/r^2 = 1 - mu - r for r in (0,1).
double lagrange_r1(double mu);

// a(r1) = (1-mu)/(2(1-r1)^3) + mu/(2 r1^3), rational in r1.
// Range is [2,4] with the maximum 4 attained at r1 = 1/2.
double a_of_r1(double r1);

// The rotating frame is fixed up to a translation along the q1-axis.
//   Standard:  earth at -mu, moon at 1-mu  (primary frame of the problem)
//   Shifted:   earth at 0,   moon at 1     (shooting computations)
//   Symmetric: earth at -1/2, moon at 1/2  (regularization chart)
enum class Frame { Standard, Shifted, Symmetric };

double earth_pos(Frame f, double mu);
inline double moon_pos(Frame f, double mu) { return earth_pos(f, mu) + 1.0; }

// Translating the frame shifts q1 and p2 by the same amount; energy is
// preserved.
Vec4 convert_frame(const Vec4& z, Frame from, Frame to, double mu);

struct RotatingState {
    Vec2 p;
    Vec2 q;

    Vec4 z() const {
        Vec4 v;
        v << p(0), p(1), q(0), q(1);
        return v;
    }
    static RotatingState from_z(const Vec4& v) { return {{v(0), v(1)}, {v(2), v(3)}}; }
    // qdot = p + i q
    Vec2 qdot() const { return {p(0) - q(1), p(1) + q(0)}; }
};

struct PotentialEval {
    double U;
    Vec2 grad;
    Mat2 hess;
};

// Effective potential U(q) = -mu/|q-m| - (1-mu)/|q-e| - |q-c|^2/2 with
// c = e + mu, plus exact first and second derivatives.
// Throws std::domain_error within 1e-9 of a primary.
PotentialEval effective_potential(const MassRatio& mr, const Vec2& q, Frame f = Frame::Standard);

double hamiltonian(const MassRatio& mr, const Vec4& z, Frame f = Frame::Standard);
Vec4 hamiltonian_gradient(const MassRatio& mr, const Vec4& z, Frame f = Frame::Standard);
Mat4 hamiltonian_hessian(const MassRatio& mr, const Vec4& z, Frame f = Frame::Standard);

// Phase velocity (pdot, qdot) = J grad(H).
Vec4 vector_field(const MassRatio& mr, const Vec4& z, Frame f = Frame::Standard);
// Linearization J hess(H) of the field.
Mat4 field_jacobian(const MassRatio& mr, const Vec4& z, Frame f = Frame::Standard);

// The five Lagrange points in the standard frame.
// Values are ordered L[0] < L[1] <= L[2] < L[3] = L[4].
struct LagrangeData {
    double r1;
    double lhat1;                   // q1-coordinate of l1 (standard frame)
    std::array<double, 5> L;        // critical values L1..L5
    std::array<Vec4, 5> points;     // equilibrium phase points l1..l5
};

LagrangeData lagrange_values(const MassRatio& mr);

// L1(mu) = U(lhat1) in closed form.
double lagrange_value_l1(const MassRatio& mr);

struct HillQuery {
    bool inside;
    double margin;  // h - U(q)
};

HillQuery hill_region_contains(const MassRatio& mr, double h, const Vec2& q,
                               Frame f = Frame::Standard);

}  // namespace cr3bp
