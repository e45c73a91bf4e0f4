#pragma once

#include <Eigen/Dense>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cr3bp {

using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;

// Standard complex structure on R^4 with ordering (p1,p2,q1,q2):
// J = [0 -I; I 0], so that zdot = J grad(H).
inline const Mat4& J4() {
    static const Mat4 J = [] {
        Mat4 m = Mat4::Zero();
        m(0, 2) = -1.0;
        m(1, 3) = -1.0;
        m(2, 0) = 1.0;
        m(3, 1) = 1.0;
        return m;
    }();
    return J;
}

inline const Mat2& J2() {
    static const Mat2 J = [] {
        Mat2 m;
        m << 0.0, -1.0, 1.0, 0.0;
        return m;
    }();
    return J;
}

inline double symplectic_defect(const Mat4& psi) {
    return (psi.transpose() * J4() * psi - J4()).cwiseAbs().maxCoeff();
}

// Defect relative to ||psi||^2; meaningful for paths with hyperbolic growth
// where the absolute defect scales with the matrix size squared.
inline double symplectic_defect_rel(const Mat4& psi) {
    return symplectic_defect(psi) / std::max(1.0, psi.squaredNorm());
}

inline double symplectic_defect2(const Mat2& psi) {
    return (psi.transpose() * J2() * psi - J2()).cwiseAbs().maxCoeff();
}

// Round-trip-exact decimal formatting for reproducible output files.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline int hardware_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

// Chunked parallel map over [0, n). Worker count <= requested threads.
inline void parallel_for(long n, const std::function<void(long, long)>& body, int threads = 0) {
    if (threads <= 0) threads = hardware_threads();
    if (threads == 1 || n < 2) {
        body(0, n);
        return;
    }
    threads = static_cast<int>(std::min<long>(threads, n));
    std::vector<std::thread> pool;
    long chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        long lo = t * chunk;
        long hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

// Bracketed bisection; f(lo) and f(hi) must have opposite signs.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double tol = 1e-14, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) throw std::invalid_argument("bisect: no sign change in bracket");
    for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (fhi > 0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace cr3bp
