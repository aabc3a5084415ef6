// l1_adaptive.hpp - model-reference adaptation on SO(3): reference model,
// tilde errors between true and reference models, transported uncertainty
// estimate with projection-bounded adaptation, and the low-pass filter that
// decouples estimation from control.
#pragma once

#include "so3l1/rigid_body.hpp"
#include "so3l1/trajectories.hpp"

namespace so3l1 {

struct Gains;  // controllers.hpp

struct ReferenceState {
    RotationMatrix R_hat;
    Vec3 Omega_hat;  // rad/s, body
};

struct AdaptationState {
    Vec3 theta_hat;     // N m, estimate in the reference-model frame
    Vec3 filter_state;  // low-pass internal state, per axis
    Mat3 Gamma = Mat3::diag(1e6, 1e6, 1e6);
    double theta_max = 5.0;   // N m, projection ball radius
    double eps_proj = 0.1;    // projection boundary-layer width

    // Validates Gamma SPD, theta_max > 0, eps_proj > 0 and
    // ||theta_hat|| <= theta_max * (1 + eps_proj).
    static AdaptationState create(const Mat3& Gamma, double theta_max, double eps_proj,
                                  const Vec3& theta_hat = {}, const Vec3& filter_state = {});
};

struct TildeErrors {
    Vec3 e_R_tilde;      // 0.5 * vee(R^T R_hat - R_hat^T R)
    Vec3 e_Omega_tilde;  // Omega_hat - R_hat^T R Omega
    double psi_tilde = 0.0;
};

// Errors of the reference model against the desired trajectory.
AttitudeErrors reference_errors(const ReferenceState& ref, const AttitudeSetpoint& sp);

// Errors between the true and reference models.
TildeErrors tilde_errors(const RotationMatrix& r, const Vec3& omega, const ReferenceState& ref);
inline TildeErrors tilde_errors(const RigidBodyState& s, const ReferenceState& ref)
{
    return tilde_errors(s.R, s.Omega, ref);
}

// P = J R_hat^T R J^-1 R^T R_hat; equals I when R_hat = R. Throws
// SingularInertia.
Mat3 p_matrix(const RotationMatrix& r, const RotationMatrix& r_hat, const Mat3& J);

// theta transported into the reference-model frame and subtracted:
// theta_tilde = theta_hat - R_hat^T R theta.
Vec3 theta_tilde(const Vec3& theta_hat, const Vec3& theta, const RotationMatrix& r,
                 const RotationMatrix& r_hat);

// Convex projection function: f <= 0 inside ||theta_hat|| <= theta_max,
// f = 1 on the outer shell ||theta_hat|| = theta_max sqrt(1 + eps_proj).
double projection_f(const Vec3& theta_hat, double theta_max, double eps_proj);

// Gamma-weighted projection of the update direction:
//   Gamma y                                            if f <= 0 or inward,
//   Gamma y - Gamma (grad grad^T / grad^T Gamma grad) Gamma y f   otherwise.
// On the outer shell the radial component of the update vanishes.
Vec3 gamma_projection(const AdaptationState& a, const Vec3& y);

// Explicit-Euler step theta_hat += dt * Proj_Gamma(theta_hat, y); any radial
// overshoot past theta_max sqrt(1 + eps_proj) is clipped back to the shell.
AdaptationState adaptation_step(AdaptationState a, const Vec3& y, double dt);

// Adaptation driven by the tilde errors:
//   y = -(P^T e_Omega_tilde + c P^T J^-T e_R_tilde).
Vec3 adaptation_target(const TildeErrors& tilde, const Mat3& P, const Mat3& J_inv, double c);
AdaptationState adaptation_update(const AdaptationState& a, const TildeErrors& tilde,
                                  const Mat3& P, const Mat3& J, double c, double dt);

// Exact zero-order-hold step of the first-order low-pass a/(s+a):
// state <- e^{-a dt} state + (1 - e^{-a dt}) u. Returns (state', output).
std::pair<Vec3, Vec3> lowpass_step(const Vec3& filter_state, const Vec3& u, double a, double dt);

struct L1Output {
    Vec3 M;           // plant moment
    Vec3 M_hat;       // reference-model moment
    Vec3 theta_filt;  // filtered estimate used in the moments
    TildeErrors tilde;
    AttitudeErrors ref_errors;
    AttitudeErrors true_errors;
    ReferenceState ref_next;
    AdaptationState adapt_next;
};

// One controller period: moments for both models, reference model advanced
// one step under M_hat with the nominal inertia, adaptation state advanced.
L1Output l1_control_step(const RigidBodyState& s, const ReferenceState& ref,
                         const AdaptationState& a, const AttitudeSetpoint& sp, const Gains& g,
                         const Mat3& J, const Mat3& J_inv, double filter_a, double dt,
                         Integrator ref_integrator);

}  // namespace so3l1
