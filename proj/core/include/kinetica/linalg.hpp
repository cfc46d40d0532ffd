// SPDX-License-Identifier: Apache-2.0
//! \file linalg.hpp
//! Small fixed-capacity vector/matrix helpers for momentum-space geometry.
//!
//! Momenta live in R^d with d in {2,3}. We store every vector with capacity 3
//! and keep unused trailing components at exactly zero, so inner products and
//! norms can always run over all three slots. This keeps the kinematics and
//! quadrature code dimension-agnostic without templates.
#pragma once

#include <array>
#include <cmath>

namespace kinetica {

using Vec = std::array<double, 3>;

/// Dense 3x3 matrix, row-major; rows/columns beyond the active dimension are
/// zero (or identity where documented).
struct Mat {
    std::array<double, 9> a{};

    double& operator()(int i, int j) { return a[static_cast<size_t>(3 * i + j)]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(3 * i + j)]; }

    static Mat identity(int dim) {
        Mat m;
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }
    static Mat zero() { return Mat{}; }
};

inline Vec vec2(double x, double y) { return Vec{x, y, 0.0}; }
inline Vec vec3(double x, double y, double z) { return Vec{x, y, z}; }

inline double dot(const Vec& u, const Vec& v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}
inline double norm2(const Vec& u) { return dot(u, u); }
inline double norm(const Vec& u) { return std::sqrt(norm2(u)); }

inline Vec add(const Vec& u, const Vec& v) { return Vec{u[0] + v[0], u[1] + v[1], u[2] + v[2]}; }
inline Vec sub(const Vec& u, const Vec& v) { return Vec{u[0] - v[0], u[1] - v[1], u[2] - v[2]}; }
inline Vec scale(double s, const Vec& u) { return Vec{s * u[0], s * u[1], s * u[2]}; }
inline Vec axpy(double s, const Vec& u, const Vec& v) {
    // s*u + v
    return Vec{s * u[0] + v[0], s * u[1] + v[1], s * u[2] + v[2]};
}

inline Mat outer(const Vec& u, const Vec& v) {
    Mat m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = u[static_cast<size_t>(i)] * v[static_cast<size_t>(j)];
    return m;
}

inline Vec matvec(const Mat& m, const Vec& u) {
    Vec r{};
    for (int i = 0; i < 3; ++i) {
        r[static_cast<size_t>(i)] = m(i, 0) * u[0] + m(i, 1) * u[1] + m(i, 2) * u[2];
    }
    return r;
}

inline Mat matmul(const Mat& x, const Mat& y) {
    Mat r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += x(i, k) * y(k, j);
            r(i, j) = s;
        }
    return r;
}

inline Mat transpose(const Mat& m) {
    Mat r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = m(j, i);
    return r;
}

inline Mat mat_add(const Mat& x, const Mat& y) {
    Mat r;
    for (size_t i = 0; i < 9; ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

inline Mat mat_scale(double s, const Mat& x) {
    Mat r;
    for (size_t i = 0; i < 9; ++i) r.a[i] = s * x.a[i];
    return r;
}

/// Frobenius double contraction A:B restricted to the leading dim block.
inline double contract(const Mat& x, const Mat& y, int dim) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) s += x(i, j) * y(i, j);
    return s;
}

/// u^T M v over the leading dim block.
inline double quad_form(const Vec& u, const Mat& m, const Vec& v) {
    return dot(u, matvec(m, v));
}

inline double max_abs_diff(const Mat& x, const Mat& y, int dim) {
    double r = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) r = std::max(r, std::abs(x(i, j) - y(i, j)));
    return r;
}

/// (d+1)x(d+1) spacetime matrix for Lorentz boosts, stored 4x4 row-major with
/// index 0 = the energy slot.
struct Mat4 {
    std::array<double, 16> a{};
    double& operator()(int i, int j) { return a[static_cast<size_t>(4 * i + j)]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(4 * i + j)]; }

    static Mat4 identity() {
        Mat4 m;
        for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
        return m;
    }
};

/// Four-vector (x0; x) with the spatial part a Vec.
struct FourVec {
    double t = 0.0;
    Vec x{};
};

inline FourVec mat4_apply(const Mat4& m, const FourVec& v) {
    FourVec r;
    r.t = m(0, 0) * v.t + m(0, 1) * v.x[0] + m(0, 2) * v.x[1] + m(0, 3) * v.x[2];
    for (int i = 0; i < 3; ++i) {
        r.x[static_cast<size_t>(i)] = m(i + 1, 0) * v.t + m(i + 1, 1) * v.x[0] +
                                      m(i + 1, 2) * v.x[1] + m(i + 1, 3) * v.x[2];
    }
    return r;
}

inline Mat4 mat4_mul(const Mat4& x, const Mat4& y) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += x(i, k) * y(k, j);
            r(i, j) = s;
        }
    return r;
}

}  // namespace kinetica
