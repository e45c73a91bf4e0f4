#pragma once

// The explicit linear package at the collinear point l1: eigenvalues,
// symplectic basis V, quadratic model H2, linear Lyapunov orbit, the
// Liouville field Y2 and the holomorphic shield profile ODE.
//
// x-coordinates are ordered (x1,x2,x3,x4) with symplectic form
// dx1^dx3 + dx2^dx4; the map to rescaled phase coordinates at l1 is
// (p,q) = l1 + sqrt(eps) * V x.

#include <vector>

#include "cr3bp/core.hpp"
#include "cr3bp/util.hpp"

namespace cr3bp {

struct SaddleCenterData {
    double mu = 0.0;
    double r1 = 0.0;
    double a = 0.0;        // (1-mu)/(2(1-r1)^3) + mu/(2 r1^3)
    double lambda1 = 0.0;  // real eigenvalue pair +-lambda1
    double lambda2 = 0.0;  // imaginary pair +-i lambda2
    double C0 = 0.0, C1 = 0.0, C2 = 0.0;
    Mat4 V = Mat4::Zero();     // columns V1..V4
    Mat4 Vinv = Mat4::Zero();
};

SaddleCenterData saddle_center_data(const MassRatio& mr);

// H2(x) = lambda1 (x1^2 - x3^2)/2 + lambda2 (x2^2 + x4^2)/2.
double h2(const SaddleCenterData& scd, const Vec4& x);
Vec4 h2_gradient(const SaddleCenterData& scd, const Vec4& x);

// Linearized equations decouple: xdot = linear_generator * x.
Mat4 linear_generator(const SaddleCenterData& scd);

// Lyapunov orbit of the quadratic model on H2^{-1}(c0):
// (0, sqrt(2 c0/lambda2) cos(lambda2 t), 0, sqrt(2 c0/lambda2) sin(lambda2 t)).
Vec4 linear_lyapunov(const SaddleCenterData& scd, double c0, double t);

// Phase point for rescaled model coordinates: z = l1 + sqrt(eps) V x.
Vec4 phase_from_model(const SaddleCenterData& scd, const Vec4& l1, double eps, const Vec4& x);
Vec4 model_from_phase(const SaddleCenterData& scd, const Vec4& l1, double eps, const Vec4& z);

// Liouville field Y2 = ((1-b)x1, x2/2, b x3, x4/2).
Vec4 y2_field(double b, const Vec4& x);
// dH2 . Y2 = lambda1 (1-b) x1^2 - lambda1 b x3^2 + lambda2 (x2^2 + x4^2)/2.
double dh2_dot_y2(const SaddleCenterData& scd, double b, const Vec4& x);

// Shield profile equation r'(s) = g(r) on [-r0, r0], r0 = sqrt(2 c0/lambda2).
double shield_ode_rhs(const SaddleCenterData& scd, double c0, double b, double r);
// Analytic g'(r0) = -4 pi lambda1 / lambda2 (rate of the exponential tail).
double shield_rate(const SaddleCenterData& scd);

struct ShieldProfile {
    double c0 = 0.0, b = 0.5;
    double r0 = 0.0;
    std::vector<double> s, r, area;          // forward branch, area(0) = 0
    std::vector<double> s_back, r_back, area_back;  // backward branch
    double fitted_rate = 0.0;                // from the tail of r0 - r(s)
    double darea_forward = 0.0;              // lim a'(s) = pi r(end)^2
    double darea_backward = 0.0;
    double x1_backward = 0.0;                // x1 at the backward end
};

ShieldProfile shield_profile(const SaddleCenterData& scd, double c0, double b, double r_init);

}  // namespace cr3bp
