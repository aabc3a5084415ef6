// so3.hpp - attitude primitives: hat/vee maps, rotation matrices, the
// configuration error function and the attitude tracking errors.
#pragma once

#include "so3l1/errors.hpp"
#include "so3l1/linalg.hpp"

namespace so3l1 {

// Skew map: hat(v) * w == cross(v, w) for all w.
Mat3 hat(const Vec3& v);

// Inverse of hat. Throws NonSkewInput if the symmetric part of m exceeds
// the tolerance (max absolute entry of (m + m^T)/2).
Vec3 vee(const Mat3& m, double tol = 1e-9);

// Orthonormal 3x3 matrix with det +1. Construction validates
// ||R^T R - I||_F <= 1e-9 and |det - 1| <= 1e-9.
class RotationMatrix {
public:
    RotationMatrix() : m_(Mat3::identity()) {}

    static RotationMatrix identity() { return RotationMatrix(); }
    static RotationMatrix from_matrix(const Mat3& m);               // throws InvalidRotation
    static RotationMatrix from_axis_angle(const Vec3& axis, double angle);
    // Z-Y-X composition: Rz(yaw) * Ry(pitch) * Rx(roll).
    static RotationMatrix from_euler_zyx(double roll, double pitch, double yaw);

    const Mat3& matrix() const { return m_; }
    Vec3 col(int c) const { return m_.col(c); }  // body axis c in the world frame
    RotationMatrix transposed() const { return RotationMatrix(transpose(m_), unchecked{}); }
    Vec3 rotate(const Vec3& v) const { return m_ * v; }
    Vec3 inverse_rotate(const Vec3& v) const { return transpose(m_) * v; }

    friend RotationMatrix operator*(const RotationMatrix& a, const RotationMatrix& b)
    {
        return RotationMatrix(a.m_ * b.m_, unchecked{});
    }

    static constexpr double kOrthoTol = 1e-9;

private:
    struct unchecked {};
    RotationMatrix(const Mat3& m, unchecked) : m_(m) {}
    friend RotationMatrix reproject_so3(const Mat3&);

    Mat3 m_;
};

// Exponential map so(3) -> SO(3) via the Rodrigues formula.
RotationMatrix so3_exp(const Vec3& v);

// Configuration error 0.5 * tr(I - R_d^T R), clamped to [0, 2].
double psi(const RotationMatrix& r, const RotationMatrix& r_d);

// C(Q) = 0.5 * (tr(Q^T) I - Q^T); for Q in SO(3), ||C(Q)||_2 <= 1.
Mat3 c_matrix(const Mat3& q);

struct AttitudeErrors {
    Vec3 e_R;      // 0.5 * vee(R_d^T R - R^T R_d)
    Vec3 e_Omega;  // Omega - R^T R_d Omega_d
};

AttitudeErrors attitude_errors(const RotationMatrix& r, const Vec3& omega,
                               const RotationMatrix& r_d, const Vec3& omega_d);

struct EulerZyx {
    double roll = 0.0;
    double pitch = 0.0;
    double yaw = 0.0;
};

// Z-Y-X Euler angles of R. pitch in [-pi/2, pi/2]; at the gimbal points
// roll/yaw split is conventional (yaw = 0).
EulerZyx euler_zyx_from(const RotationMatrix& r);

inline double deg_to_rad(double d) { return d * 0.017453292519943295; }
inline double rad_to_deg(double r) { return r * 57.29577951308232; }

}  // namespace so3l1
