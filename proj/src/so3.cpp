#include "so3l1/so3.hpp"

#include <cmath>

namespace so3l1 {

Mat3 hat(const Vec3& v)
{
    Mat3 out;
    out(0, 1) = -v.z;
    out(0, 2) = v.y;
    out(1, 0) = v.z;
    out(1, 2) = -v.x;
    out(2, 0) = -v.y;
    out(2, 1) = v.x;
    return out;
}

Vec3 vee(const Mat3& m, double tol)
{
    const Mat3 sym = 0.5 * (m + transpose(m));
    if (max_abs(sym) > tol)
        throw NonSkewInput("vee: symmetric part exceeds tolerance");
    return {m(2, 1), m(0, 2), m(1, 0)};
}

RotationMatrix RotationMatrix::from_matrix(const Mat3& m)
{
    const double ortho = frobenius_norm(transpose(m) * m - Mat3::identity());
    const double d = det(m);
    if (ortho > kOrthoTol || std::abs(d - 1.0) > kOrthoTol)
        throw InvalidRotation("rotation matrix check failed: ||R^T R - I||_F = "
                              + std::to_string(ortho) + ", det = " + std::to_string(d));
    return RotationMatrix(m, unchecked{});
}

RotationMatrix RotationMatrix::from_axis_angle(const Vec3& axis, double angle)
{
    const double n = norm(axis);
    if (n == 0.0)
        return identity();
    return so3_exp(axis * (angle / n));
}

RotationMatrix RotationMatrix::from_euler_zyx(double roll, double pitch, double yaw)
{
    const double cr = std::cos(roll), sr = std::sin(roll);
    const double cp = std::cos(pitch), sp = std::sin(pitch);
    const double cy = std::cos(yaw), sy = std::sin(yaw);
    Mat3 m = Mat3::from_rows({cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr},
                             {sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr},
                             {-sp, cp * sr, cp * cr});
    return RotationMatrix(m, unchecked{});
}

RotationMatrix so3_exp(const Vec3& v)
{
    const double angle = norm(v);
    if (angle < 1e-12) {
        // Second-order series keeps the result orthonormal to machine precision here.
        const Mat3 vh = hat(v);
        return RotationMatrix::from_matrix(Mat3::identity() + vh + 0.5 * (vh * vh));
    }
    const Vec3 axis = v / angle;
    const Mat3 k = hat(axis);
    const Mat3 m = Mat3::identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * (k * k);
    return RotationMatrix::from_matrix(m);
}

double psi(const RotationMatrix& r, const RotationMatrix& r_d)
{
    const double value = 0.5 * trace(Mat3::identity() - transpose(r_d.matrix()) * r.matrix());
    return std::min(2.0, std::max(0.0, value));
}

Mat3 c_matrix(const Mat3& q)
{
    const Mat3 qt = transpose(q);
    return 0.5 * (trace(qt) * Mat3::identity() - qt);
}

AttitudeErrors attitude_errors(const RotationMatrix& r, const Vec3& omega,
                               const RotationMatrix& r_d, const Vec3& omega_d)
{
    const Mat3 rdt_r = transpose(r_d.matrix()) * r.matrix();
    const Mat3 skew = 0.5 * (rdt_r - transpose(rdt_r));
    AttitudeErrors out;
    out.e_R = {skew(2, 1), skew(0, 2), skew(1, 0)};
    out.e_Omega = omega - transpose(rdt_r) * omega_d;
    return out;
}

EulerZyx euler_zyx_from(const RotationMatrix& r)
{
    const Mat3& m = r.matrix();
    EulerZyx e;
    const double sp = -m(2, 0);
    e.pitch = std::asin(std::min(1.0, std::max(-1.0, sp)));
    if (std::abs(sp) > 1.0 - 1e-12) {
        // Gimbal point: only roll -+ yaw is observable; put it all in roll.
        e.yaw = 0.0;
        e.roll = std::atan2(m(0, 1) * (sp > 0 ? 1.0 : -1.0), m(1, 1));
    } else {
        e.roll = std::atan2(m(2, 1), m(2, 2));
        e.yaw = std::atan2(m(1, 0), m(0, 0));
    }
    return e;
}

}  // namespace so3l1
