#include "so3l1/disturbances.hpp"

#include <cmath>

namespace so3l1 {

double harmonic_scalar(double t)
{
    return 0.5
        * (std::cos(t) + 0.5 * std::cos(3.0 * t + 0.23) + 0.5 * std::cos(5.0 * t - 0.4)
           + 0.5 * std::cos(7.0 * t + 2.09));
}

Vec3 theta_e_eval(const DisturbanceSpec& spec, double t, const RotationMatrix& R, double g)
{
    Vec3 total;
    for (const auto& comp : spec.components) {
        if (const auto* c = std::get_if<ConstantDisturbance>(&comp)) {
            total += c->theta_t;
        } else if (const auto* hrm = std::get_if<HarmonicDisturbance>(&comp)) {
            total += harmonic_scalar(t) * hrm->axis_scale;
        } else if (const auto* am = std::get_if<AddedMassDisturbance>(&comp)) {
            if (am->m_a < 0.0)
                throw NegativeMass("added mass must be non-negative");
            const Vec3 body_up = R.inverse_rotate({0, 0, 1});  // R^T e3
            total += (am->m_a * g) * cross(am->r, body_up);
        }
    }
    return total;
}

Vec3 theta_truth(const Vec3& mu, const RigidBodyState& s, const AttitudeSetpoint& sp,
                 const Mat3& J, const Mat3& J_bar, const Vec3& theta_e)
{
    const auto J_bar_inv = inverse(J_bar);
    if (!J_bar_inv)
        throw SingularInertia("theta_truth: J_bar is numerically singular");

    const Mat3 dJ = J_bar - J;
    const Mat3 rt_rd = transpose(s.R.matrix()) * sp.R_d.matrix();
    const Vec3 theta_m = -cross(s.Omega, dJ * s.Omega)
        + dJ * (hat(s.Omega) * (rt_rd * sp.Omega_d) - rt_rd * sp.dOmega_d);

    const Mat3 j_jbar_inv = J * (*J_bar_inv);
    const Mat3 delta_J = j_jbar_inv - Mat3::identity();
    return delta_J * mu + j_jbar_inv * (theta_m + theta_e);
}

}  // namespace so3l1
