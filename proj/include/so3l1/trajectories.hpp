// trajectories.hpp - desired-trajectory generators in flat outputs and the
// map from flat outputs to a desired attitude, rate and rate derivative.
#pragma once

#include <functional>

#include "so3l1/so3.hpp"

namespace so3l1 {

struct FlatSample {
    double t = 0.0;
    Vec3 x_d;       // m
    Vec3 v_d;       // m/s
    Vec3 a_d;       // m/s^2
    Vec3 jerk_d;    // m/s^3
    double psi_d = 0.0;  // yaw, rad
};

struct AttitudeSetpoint {
    RotationMatrix R_d;
    Vec3 Omega_d;    // rad/s, body
    Vec3 dOmega_d;   // rad/s^2, body
};

// Planar circle of radius rho at angular rate omega, yaw fixed at zero.
FlatSample circle_flat(double t, double rho, double omega);

struct SigmoidCircleParams {
    double rho = 1.0;
    double x0 = 0.0, y0 = 0.0, z0 = 0.0;
    double a = 13.0;
    double b = 1.0;
    double c = 0.1;
    double t0 = 80.0;
};

// Circle whose phase angle is the logistic 2*pi*a / (b + exp(-c (t - t0))):
// the tangential speed ramps from zero up through a peak and back down.
FlatSample sigmoid_circle_flat(double t, const SigmoidCircleParams& p);

// Fixed attitude setpoint from Z-Y-X angles; Omega_d = dOmega_d = 0.
// Hover is the zero-angle case.
AttitudeSetpoint attitude_setpoint_static(double roll, double pitch, double yaw);

using FlatTrajectory = std::function<FlatSample(double)>;

// Desired rotation at one flat sample with the feedback errors held fixed:
//   A = -k_x e_x - k_v e_v - m g e3 + m a_d   (the commanded thrust vector)
//   b3d = -A / ||A||, b1d = yaw heading Gram-Schmidt'ed against b3d,
//   R_d = [b1d, b3d x b1d, b3d].
// Throws DegenerateThrust when ||A|| < 1e-6 N or the heading is collinear
// with b3d.
RotationMatrix desired_rotation(const FlatSample& f, double k_x, double k_v, const Vec3& e_x,
                                const Vec3& e_v, double m, double grav);

// Full setpoint: R_d as above at time t; Omega_d and dOmega_d from central
// finite differences of R_d over the trajectory with step h (the errors e_x,
// e_v are held at their current values across the stencil).
AttitudeSetpoint attitude_from_flat(const FlatTrajectory& traj, double t, double h, double k_x,
                                    double k_v, const Vec3& e_x, const Vec3& e_v, double m,
                                    double grav);

constexpr double kThrustEpsilon = 1e-6;  // N

}  // namespace so3l1
