#include "so3l1/trajectories.hpp"

#include <cmath>
#include <numbers>

namespace so3l1 {

FlatSample circle_flat(double t, double rho, double omega)
{
    if (!(rho > 0.0))
        throw ValidationError("circle radius must be positive");
    const double c = std::cos(omega * t);
    const double s = std::sin(omega * t);
    const double w2 = omega * omega;
    FlatSample f;
    f.t = t;
    f.x_d = {rho * c, rho * s, 0.0};
    f.v_d = {-rho * omega * s, rho * omega * c, 0.0};
    f.a_d = {-rho * w2 * c, -rho * w2 * s, 0.0};
    f.jerk_d = {rho * w2 * omega * s, -rho * w2 * omega * c, 0.0};
    f.psi_d = 0.0;
    return f;
}

FlatSample sigmoid_circle_flat(double t, const SigmoidCircleParams& p)
{
    if (!(p.b > 0.0))
        throw ValidationError("sigmoid circle requires b > 0");

    // Phase angle phi = 2 pi a / (b + u) with u = exp(-c (t - t0)); udot = -c u.
    const double u = std::exp(-p.c * (t - p.t0));
    const double den = p.b + u;
    const double K = 2.0 * std::numbers::pi * p.a;
    const double phi = K / den;
    const double phi_d1 = K * p.c * u / (den * den);
    const double phi_d2 = -K * p.c * p.c * u * (p.b - u) / (den * den * den);
    const double phi_d3 =
        K * p.c * p.c * p.c * u * (p.b * p.b - 4.0 * p.b * u + u * u) / (den * den * den * den);

    const double cs = std::cos(phi);
    const double sn = std::sin(phi);
    FlatSample f;
    f.t = t;
    f.x_d = {p.x0 + p.rho * cs, p.y0 + p.rho * sn, p.z0};
    f.v_d = {-p.rho * phi_d1 * sn, p.rho * phi_d1 * cs, 0.0};
    f.a_d = {p.rho * (-phi_d2 * sn - phi_d1 * phi_d1 * cs),
             p.rho * (phi_d2 * cs - phi_d1 * phi_d1 * sn), 0.0};
    f.jerk_d = {p.rho * (-phi_d3 * sn - 3.0 * phi_d1 * phi_d2 * cs + phi_d1 * phi_d1 * phi_d1 * sn),
                p.rho * (phi_d3 * cs - 3.0 * phi_d1 * phi_d2 * sn - phi_d1 * phi_d1 * phi_d1 * cs),
                0.0};
    f.psi_d = 0.0;
    return f;
}

AttitudeSetpoint attitude_setpoint_static(double roll, double pitch, double yaw)
{
    AttitudeSetpoint sp;
    sp.R_d = RotationMatrix::from_euler_zyx(roll, pitch, yaw);
    sp.Omega_d = {};
    sp.dOmega_d = {};
    return sp;
}

RotationMatrix desired_rotation(const FlatSample& f, double k_x, double k_v, const Vec3& e_x,
                                const Vec3& e_v, double m, double grav)
{
    const Vec3 A = -k_x * e_x - k_v * e_v - (m * grav) * Vec3{0, 0, 1} + m * f.a_d;
    const double nA = norm(A);
    if (nA < kThrustEpsilon)
        throw DegenerateThrust("commanded thrust vector is numerically zero");
    const Vec3 b3 = (-1.0 / nA) * A;

    const Vec3 heading{std::cos(f.psi_d), std::sin(f.psi_d), 0.0};
    Vec3 b1 = heading - dot(heading, b3) * b3;
    const double nb1 = norm(b1);
    if (nb1 < kThrustEpsilon)
        throw DegenerateThrust("yaw heading is collinear with the thrust axis");
    b1 = b1 / nb1;

    return RotationMatrix::from_matrix(Mat3::from_cols(b1, cross(b3, b1), b3));
}

AttitudeSetpoint attitude_from_flat(const FlatTrajectory& traj, double t, double h, double k_x,
                                    double k_v, const Vec3& e_x, const Vec3& e_v, double m,
                                    double grav)
{
    if (!(h > 0.0))
        throw ValidationError("finite-difference step must be positive");

    auto rd_at = [&](double tau) {
        return desired_rotation(traj(tau), k_x, k_v, e_x, e_v, m, grav);
    };

    // 5-point stencil: Omega_d by a central difference of R_d, dOmega_d by a
    // central difference of Omega_d.
    const RotationMatrix r_m2 = rd_at(t - 2.0 * h);
    const RotationMatrix r_m1 = rd_at(t - h);
    const RotationMatrix r_0 = rd_at(t);
    const RotationMatrix r_p1 = rd_at(t + h);
    const RotationMatrix r_p2 = rd_at(t + 2.0 * h);

    auto body_rate = [&](const RotationMatrix& rm, const RotationMatrix& rc,
                         const RotationMatrix& rp) {
        const Mat3 r_dot = (1.0 / (2.0 * h)) * (rp.matrix() - rm.matrix());
        const Mat3 w = transpose(rc.matrix()) * r_dot;
        const Mat3 skew = 0.5 * (w - transpose(w));
        return Vec3{skew(2, 1), skew(0, 2), skew(1, 0)};
    };

    AttitudeSetpoint sp;
    sp.R_d = r_0;
    sp.Omega_d = body_rate(r_m1, r_0, r_p1);
    const Vec3 om_m1 = body_rate(r_m2, r_m1, r_0);
    const Vec3 om_p1 = body_rate(r_0, r_p1, r_p2);
    sp.dOmega_d = (1.0 / (2.0 * h)) * (om_p1 - om_m1);
    return sp;
}

}  // namespace so3l1
