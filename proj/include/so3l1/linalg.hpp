// linalg.hpp - fixed-size 3-vector / 3x3-matrix math used throughout the library.
#pragma once

#include <array>
#include <cmath>
#include <optional>

namespace so3l1 {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
};

inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
inline Vec3 operator*(double s, Vec3 a) { return a *= s; }
inline Vec3 operator*(Vec3 a, double s) { return a *= s; }
inline Vec3 operator/(Vec3 a, double s) { return a *= (1.0 / s); }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm_sq(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm_sq(a)); }
inline double norm_inf(const Vec3& a)
{
    return std::max(std::abs(a.x), std::max(std::abs(a.y), std::abs(a.z)));
}
inline bool is_finite(const Vec3& a)
{
    return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

// Row-major 3x3 matrix.
struct Mat3 {
    std::array<std::array<double, 3>, 3> m{};

    double operator()(int r, int c) const { return m[r][c]; }
    double& operator()(int r, int c) { return m[r][c]; }

    static Mat3 zero() { return {}; }
    static Mat3 identity()
    {
        Mat3 out;
        out(0, 0) = out(1, 1) = out(2, 2) = 1.0;
        return out;
    }
    static Mat3 diag(double a, double b, double c)
    {
        Mat3 out;
        out(0, 0) = a;
        out(1, 1) = b;
        out(2, 2) = c;
        return out;
    }
    static Mat3 diag(const Vec3& d) { return diag(d.x, d.y, d.z); }
    static Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2)
    {
        Mat3 out;
        for (int c = 0; c < 3; ++c) {
            out(0, c) = r0[c];
            out(1, c) = r1[c];
            out(2, c) = r2[c];
        }
        return out;
    }
    static Mat3 from_cols(const Vec3& c0, const Vec3& c1, const Vec3& c2)
    {
        Mat3 out;
        for (int r = 0; r < 3; ++r) {
            out(r, 0) = c0[r];
            out(r, 1) = c1[r];
            out(r, 2) = c2[r];
        }
        return out;
    }
    // Outer product a*b^T.
    static Mat3 outer(const Vec3& a, const Vec3& b)
    {
        Mat3 out;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                out(r, c) = a[r] * b[c];
        return out;
    }

    Vec3 row(int r) const { return {m[r][0], m[r][1], m[r][2]}; }
    Vec3 col(int c) const { return {m[0][c], m[1][c], m[2][c]}; }

    Mat3& operator+=(const Mat3& o)
    {
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                m[r][c] += o(r, c);
        return *this;
    }
    Mat3& operator-=(const Mat3& o)
    {
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                m[r][c] -= o(r, c);
        return *this;
    }
    Mat3& operator*=(double s)
    {
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                m[r][c] *= s;
        return *this;
    }
};

inline Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
inline Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
inline Mat3 operator*(double s, Mat3 a) { return a *= s; }
inline Mat3 operator*(Mat3 a, double s) { return a *= s; }

inline Vec3 operator*(const Mat3& a, const Vec3& v)
{
    return {dot(a.row(0), v), dot(a.row(1), v), dot(a.row(2), v)};
}

inline Mat3 operator*(const Mat3& a, const Mat3& b)
{
    Mat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c) + a(r, 2) * b(2, c);
    return out;
}

inline Mat3 transpose(const Mat3& a)
{
    Mat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            out(r, c) = a(c, r);
    return out;
}

inline double trace(const Mat3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }

inline double det(const Mat3& a)
{
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
         - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
         + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

inline double frobenius_norm(const Mat3& a)
{
    double s = 0.0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            s += a(r, c) * a(r, c);
    return std::sqrt(s);
}

inline double max_abs(const Mat3& a)
{
    double s = 0.0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            s = std::max(s, std::abs(a(r, c)));
    return s;
}

inline bool is_finite(const Mat3& a)
{
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            if (!std::isfinite(a(r, c)))
                return false;
    return true;
}

// Inverse by adjugate; empty when |det| <= tol * max|entry|^3 (scale-aware
// singularity guard, with an absolute floor for the all-zero matrix).
std::optional<Mat3> inverse(const Mat3& a, double tol = 1e-12);

// Eigenvalues of a symmetric 3x3 matrix, ascending, by cyclic Jacobi sweeps.
// The symmetric part of `a` is used; no symmetry check is performed here.
Vec3 sym_eigenvalues(const Mat3& a);

// Eigenvalues of the symmetric 2x2 matrix [[a, b], [b, d]], ascending.
std::array<double, 2> sym_eigenvalues_2x2(double a, double b, double d);

// Largest singular value (operator 2-norm).
double operator_norm(const Mat3& a);

}  // namespace so3l1
