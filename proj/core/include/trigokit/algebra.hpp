#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace trigokit {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

// Symmetric 3x3 matrix, six stored entries.
struct SymMat3 {
    double e11 = 0.0, e22 = 0.0, e33 = 0.0;
    double e23 = 0.0, e13 = 0.0, e12 = 0.0;

    double operator()(int i, int j) const {
        if (i == j) return i == 0 ? e11 : (i == 1 ? e22 : e33);
        const int s = i + j; // 1 -> e12, 2 -> e13, 3 -> e23
        return s == 1 ? e12 : (s == 2 ? e13 : e23);
    }
    double& entry(int i, int j) {
        if (i == j) return i == 0 ? e11 : (i == 1 ? e22 : e33);
        const int s = i + j;
        return s == 1 ? e12 : (s == 2 ? e13 : e23);
    }

    SymMat3 operator+(const SymMat3& o) const {
        return {e11 + o.e11, e22 + o.e22, e33 + o.e33, e23 + o.e23, e13 + o.e13, e12 + o.e12};
    }
    SymMat3 operator-(const SymMat3& o) const {
        return {e11 - o.e11, e22 - o.e22, e33 - o.e33, e23 - o.e23, e13 - o.e13, e12 - o.e12};
    }
    SymMat3 operator*(double s) const {
        return {e11 * s, e22 * s, e33 * s, e23 * s, e13 * s, e12 * s};
    }

    double frobenius() const {
        return std::sqrt(e11 * e11 + e22 * e22 + e33 * e33 +
                         2.0 * (e23 * e23 + e13 * e13 + e12 * e12));
    }
    double max_abs() const {
        double m = 0.0;
        for (double v : {e11, e22, e33, e23, e13, e12}) m = std::max(m, std::abs(v));
        return m;
    }

    Vec3 apply(const Vec3& v) const {
        return {e11 * v.x + e12 * v.y + e13 * v.z,
                e12 * v.x + e22 * v.y + e23 * v.z,
                e13 * v.x + e23 * v.y + e33 * v.z};
    }
};

inline double max_abs_diff(const SymMat3& a, const SymMat3& b) { return (a - b).max_abs(); }

// (1/2)(a (x) n + n (x) a)
inline SymMat3 symmetrized_outer(const Vec3& a, const Vec3& n) {
    SymMat3 m;
    m.e11 = a.x * n.x;
    m.e22 = a.y * n.y;
    m.e33 = a.z * n.z;
    m.e23 = 0.5 * (a.y * n.z + a.z * n.y);
    m.e13 = 0.5 * (a.x * n.z + a.z * n.x);
    m.e12 = 0.5 * (a.x * n.y + a.y * n.x);
    return m;
}

// General (not necessarily symmetric) 3x3 matrix, row major.
struct Mat3 {
    std::array<double, 9> m{};

    double operator()(int i, int j) const { return m[std::size_t(3 * i + j)]; }
    double& operator()(int i, int j) { return m[std::size_t(3 * i + j)]; }

    Vec3 row(int i) const { return {(*this)(i, 0), (*this)(i, 1), (*this)(i, 2)}; }

    static Mat3 product(const Mat3& a, const Mat3& b) {
        Mat3 c;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
                c(i, j) = s;
            }
        return c;
    }
};

// Congruence C e C^t of a symmetric matrix; the result is symmetric again.
inline SymMat3 congruence(const Mat3& c, const SymMat3& e) {
    const Vec3 r0 = c.row(0), r1 = c.row(1), r2 = c.row(2);
    const Vec3 er0 = e.apply(r0), er1 = e.apply(r1), er2 = e.apply(r2);
    SymMat3 out;
    out.e11 = dot(r0, er0);
    out.e22 = dot(r1, er1);
    out.e33 = dot(r2, er2);
    out.e23 = dot(r1, er2);
    out.e13 = dot(r0, er2);
    out.e12 = dot(r0, er1);
    return out;
}

struct EigenDecomposition3 {
    std::array<double, 3> values;  // ascending
    std::array<Vec3, 3> vectors;   // orthonormal, vectors[i] for values[i]
};

// Cyclic Jacobi iteration for a symmetric 3x3 matrix.
EigenDecomposition3 eigen_sym3(const SymMat3& m);

} // namespace trigokit
