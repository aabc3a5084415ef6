#include "so3l1/l1_adaptive.hpp"

#include <cmath>

#include "so3l1/controllers.hpp"

namespace so3l1 {

AdaptationState AdaptationState::create(const Mat3& Gamma, double theta_max, double eps_proj,
                                        const Vec3& theta_hat, const Vec3& filter_state)
{
    if (max_abs(Gamma - transpose(Gamma)) > 1e-9 * std::max(1.0, max_abs(Gamma)))
        throw ValidationError("Gamma must be symmetric");
    if (sym_eigenvalues(Gamma).x <= 0.0)
        throw ValidationError("Gamma must be positive definite");
    if (!(theta_max > 0.0))
        throw ValidationError("theta_max must be positive");
    if (!(eps_proj > 0.0))
        throw ValidationError("eps_proj must be positive");
    if (norm(theta_hat) > theta_max * (1.0 + eps_proj))
        throw ValidationError("initial theta_hat outside the projection bound");
    AdaptationState a;
    a.Gamma = Gamma;
    a.theta_max = theta_max;
    a.eps_proj = eps_proj;
    a.theta_hat = theta_hat;
    a.filter_state = filter_state;
    return a;
}

AttitudeErrors reference_errors(const ReferenceState& ref, const AttitudeSetpoint& sp)
{
    return attitude_errors(ref.R_hat, ref.Omega_hat, sp.R_d, sp.Omega_d);
}

TildeErrors tilde_errors(const RotationMatrix& r, const Vec3& omega, const ReferenceState& ref)
{
    const Mat3 rt_rhat = transpose(r.matrix()) * ref.R_hat.matrix();
    const Mat3 skew = 0.5 * (rt_rhat - transpose(rt_rhat));
    TildeErrors out;
    out.e_R_tilde = {skew(2, 1), skew(0, 2), skew(1, 0)};
    out.e_Omega_tilde = ref.Omega_hat - transpose(rt_rhat) * omega;
    out.psi_tilde =
        std::min(2.0, std::max(0.0, 0.5 * trace(Mat3::identity() - rt_rhat)));
    return out;
}

Mat3 p_matrix(const RotationMatrix& r, const RotationMatrix& r_hat, const Mat3& J)
{
    const auto J_inv = inverse(J);
    if (!J_inv)
        throw SingularInertia("p_matrix: J is numerically singular");
    const Mat3 rhat_t_r = transpose(r_hat.matrix()) * r.matrix();
    return J * rhat_t_r * (*J_inv) * transpose(rhat_t_r);
}

Vec3 theta_tilde(const Vec3& theta_hat, const Vec3& theta, const RotationMatrix& r,
                 const RotationMatrix& r_hat)
{
    return theta_hat - transpose(r_hat.matrix()) * (r.matrix() * theta);
}

double projection_f(const Vec3& theta_hat, double theta_max, double eps_proj)
{
    return (norm_sq(theta_hat) - theta_max * theta_max) / (eps_proj * theta_max * theta_max);
}

Vec3 gamma_projection(const AdaptationState& a, const Vec3& y)
{
    const double f = projection_f(a.theta_hat, a.theta_max, a.eps_proj);
    const Vec3 grad = (2.0 / (a.eps_proj * a.theta_max * a.theta_max)) * a.theta_hat;
    const Vec3 gy = a.Gamma * y;
    if (f > 0.0 && dot(y, a.Gamma * grad) > 0.0) {
        const double denom = dot(grad, a.Gamma * grad);
        return gy - (f * dot(grad, gy) / denom) * (a.Gamma * grad);
    }
    return gy;
}

AdaptationState adaptation_step(AdaptationState a, const Vec3& y, double dt)
{
    a.theta_hat += dt * gamma_projection(a, y);
    const double bound = a.theta_max * std::sqrt(1.0 + a.eps_proj);
    const double n = norm(a.theta_hat);
    if (n > bound)
        a.theta_hat *= bound / n;
    return a;
}

Vec3 adaptation_target(const TildeErrors& tilde, const Mat3& P, const Mat3& J_inv, double c)
{
    const Mat3 Pt = transpose(P);
    return -(Pt * tilde.e_Omega_tilde + c * (Pt * (transpose(J_inv) * tilde.e_R_tilde)));
}

AdaptationState adaptation_update(const AdaptationState& a, const TildeErrors& tilde,
                                  const Mat3& P, const Mat3& J, double c, double dt)
{
    const auto J_inv = inverse(J);
    if (!J_inv)
        throw SingularInertia("adaptation_update: J is numerically singular");
    return adaptation_step(a, adaptation_target(tilde, P, *J_inv, c), dt);
}

std::pair<Vec3, Vec3> lowpass_step(const Vec3& filter_state, const Vec3& u, double a, double dt)
{
    if (!(a > 0.0) || !(dt > 0.0))
        throw ValidationError("lowpass_step requires a > 0 and dt > 0");
    const double decay = std::exp(-a * dt);
    const Vec3 next = decay * filter_state + (1.0 - decay) * u;
    return {next, next};
}

L1Output l1_control_step(const RigidBodyState& s, const ReferenceState& ref,
                         const AdaptationState& a, const AttitudeSetpoint& sp, const Gains& g,
                         const Mat3& J, const Mat3& J_inv, double filter_a, double dt,
                         Integrator ref_integrator)
{
    L1Output out;
    out.ref_errors = reference_errors(ref, sp);
    out.true_errors = attitude_errors(s.R, s.Omega, sp.R_d, sp.Omega_d);
    out.tilde = tilde_errors(s, ref);

    const Mat3 rt_rhat = transpose(s.R.matrix()) * ref.R_hat.matrix();   // R^T R_hat
    const Mat3 rhat_t_r = transpose(rt_rhat);                            // R_hat^T R
    const Mat3 P = J * rhat_t_r * J_inv * rt_rhat;

    auto [filt_next, theta_filt] = lowpass_step(a.filter_state, a.theta_hat, filter_a, dt);
    out.theta_filt = theta_filt;

    // Reference-model moment: PD toward the desired trajectory plus the
    // uncertainty terms, with the usual feedforward cancellation.
    const Vec3 mu_hat_1 =
        -g.k_R_hat * out.ref_errors.e_R - g.k_Omega_tilde * out.ref_errors.e_Omega;
    const Vec3 mu_hat_2 = P * a.theta_hat - theta_filt;
    const Mat3 rhat_t_rd = transpose(ref.R_hat.matrix()) * sp.R_d.matrix();
    out.M_hat = mu_hat_1 + mu_hat_2 + cross(ref.Omega_hat, J * ref.Omega_hat)
        - J * (hat(ref.Omega_hat) * (rhat_t_rd * sp.Omega_d) - rhat_t_rd * sp.dOmega_d);

    // Plant moment: track the reference model, inject the filtered estimate.
    const Vec3 mu_1 = J * (rt_rhat * (J_inv * (mu_hat_1 - theta_filt
                                               + g.k_R_tilde * out.tilde.e_R_tilde
                                               + g.k_Omega_tilde * out.tilde.e_Omega_tilde)));
    const Vec3 mu_2 =
        J * (rt_rhat * (hat(out.tilde.e_Omega_tilde) * (rhat_t_r * out.true_errors.e_Omega)));
    const Mat3 rt_rd = transpose(s.R.matrix()) * sp.R_d.matrix();
    out.M = mu_1 + mu_2 + cross(s.Omega, J * s.Omega)
        - J * (hat(s.Omega) * (rt_rd * sp.Omega_d) - rt_rd * sp.dOmega_d);

    // Advance the reference model one step under M_hat with nominal J.
    const AttitudeState ref_next = attitude_step({ref.R_hat, ref.Omega_hat}, out.M_hat, J, J_inv,
                                                 dt, ref_integrator);
    out.ref_next = {ref_next.R, ref_next.Omega};

    // Advance the adaptation; the filter state advances with it.
    AdaptationState a_next = a;
    a_next.filter_state = filt_next;
    a_next = adaptation_step(std::move(a_next),
                             adaptation_target(out.tilde, P, J_inv, g.c), dt);
    out.adapt_next = a_next;
    return out;
}

}  // namespace so3l1
