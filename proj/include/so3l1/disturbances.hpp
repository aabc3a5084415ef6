// disturbances.hpp - external moment disturbance generators and the
// ground-truth combined uncertainty used for logging and validation.
#pragma once

#include <variant>
#include <vector>

#include "so3l1/rigid_body.hpp"
#include "so3l1/trajectories.hpp"

namespace so3l1 {

struct ConstantDisturbance {
    Vec3 theta_t;  // N m, body frame
};

// Scalar multi-tone signal applied per axis through axis_scale
// (default: replicated identically on all three axes).
struct HarmonicDisturbance {
    Vec3 axis_scale{1.0, 1.0, 1.0};
};

// Gravity moment of a point mass m_a fixed at body position r.
struct AddedMassDisturbance {
    double m_a = 0.0;  // kg
    Vec3 r;            // m, body frame
};

using DisturbanceComponent =
    std::variant<ConstantDisturbance, HarmonicDisturbance, AddedMassDisturbance>;

struct DisturbanceSpec {
    std::vector<DisturbanceComponent> components;  // summed
};

// (cos t + 0.5 cos(3t + 0.23) + 0.5 cos(5t - 0.4) + 0.5 cos(7t + 2.09)) / 2
double harmonic_scalar(double t);

// Sum of the active components at time t; the added-mass term is
// m_a g (r x R^T e3). Throws NegativeMass for m_a < 0.
Vec3 theta_e_eval(const DisturbanceSpec& spec, double t, const RotationMatrix& R, double g);

// Combined moment-channel uncertainty seen by a controller that uses the
// nominal inertia J while the plant runs J_bar and theta_e:
//   theta_m = -Omega x (J_bar - J) Omega
//             + (J_bar - J)(hat(Omega) R^T R_d Omega_d - R^T R_d dOmega_d)
//   theta   = (J J_bar^-1 - I) mu + J J_bar^-1 (theta_m + theta_e).
// Throws SingularInertia.
Vec3 theta_truth(const Vec3& mu, const RigidBodyState& s, const AttitudeSetpoint& sp,
                 const Mat3& J, const Mat3& J_bar, const Vec3& theta_e);

}  // namespace so3l1
