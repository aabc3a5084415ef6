// controllers.hpp - position loop, geometric PD / PID attitude moments, the
// Euler-angle L1 baseline and input saturation.
#pragma once

#include "so3l1/l1_adaptive.hpp"
#include "so3l1/rigid_body.hpp"
#include "so3l1/trajectories.hpp"

namespace so3l1 {

struct Gains {
    double k_x = 4.0;
    double k_v = 3.2;
    double k_R = 2.0;
    double k_Omega = 0.25;
    double k_R_hat = 25.0;
    double k_R_tilde = 2.0;
    double k_Omega_tilde = 0.25;
    double k_I = 0.0;  // integral gain, PID only
    double c = 0.0;    // Lyapunov cross-term; 0 means "derive from J"
};

// Largest c for which the certificate matrices stay positive definite,
// scaled by 0.9:
//   0.9 * min{ k_Om, 4 k_Om k_R lm(J)^2 / (k_Om^2 lM(J) + 4 k_R lm(J)^2),
//              sqrt(k_R lm(J)) }.
double default_cross_term(double k_R, double k_Omega, const Mat3& J);

// Validates positivity, fills c when zero, and checks that W(c) is positive
// definite (throws IndefiniteW otherwise).
Gains resolve_gains(Gains g, const Mat3& J);

struct PositionControlOut {
    double f = 0.0;  // thrust magnitude, N
    Vec3 F;          // commanded thrust vector, N, inertial
    AttitudeSetpoint setpoint;
};

// F = -k_x e_x - k_v e_v - m g e3 + m a_d; f = -F . R e3; desired attitude
// from the flat trajectory (finite-difference step h for Omega_d, dOmega_d).
PositionControlOut position_control(const RigidBodyState& s, const FlatTrajectory& traj,
                                    double t, double h, const Gains& g, double m, double grav);

// M = -k_R e_R - k_Om e_Om + Omega x J Omega
//     - J (hat(Omega) R^T R_d Omega_d - R^T R_d dOmega_d).
Vec3 geometric_pd_moment(const RigidBodyState& s, const AttitudeSetpoint& sp, const Gains& g,
                         const Mat3& J);

struct PidState {
    Vec3 integral;  // integral of e_R + c * e_Omega
};

// PD moment plus -k_I * integral, with the integral contribution clamped
// per axis at clamp_limit (anti-windup).
std::pair<Vec3, PidState> geometric_pid_moment(const RigidBodyState& s,
                                               const AttitudeSetpoint& sp, const Gains& g,
                                               const Mat3& J, PidState is, double dt,
                                               double clamp_limit);

// Per-axis clamp to [-limit, limit].
Vec3 saturate_moment(const Vec3& M, double limit);

// Euler-angle L1 baseline. The reference model lives in Z-Y-X Euler
// coordinates (eta_hat integrated through the Euler-rate kinematic matrix);
// errors between models are plain wrapped differences, the adaptation and
// low-pass filter match the geometric scheme. The plant itself is always
// integrated geometrically by the caller.
struct EulerL1State {
    Vec3 eta_hat;    // roll, pitch, yaw of the reference model
    Vec3 omega_hat;  // body rates of the reference model
    AdaptationState adapt;
};

struct EulerL1Output {
    Vec3 M;
    Vec3 M_hat;
    Vec3 theta_filt;
    EulerL1State next;
};

// Throws GimbalProximity when any involved pitch gets within 1e-6 rad of
// +-90 deg (callers treat this as a failed run, not a crash).
EulerL1Output euler_l1_moment(const RigidBodyState& s, const AttitudeSetpoint& sp,
                              const EulerL1State& st, const Gains& g, const Mat3& J,
                              const Mat3& J_inv, double filter_a, double dt,
                              Integrator ref_integrator);

constexpr double kGimbalMargin = 1e-6;  // rad

}  // namespace so3l1
