#include "so3l1/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace so3l1 {

double default_cross_term(double k_R, double k_Omega, const Mat3& J)
{
    const Vec3 ev = sym_eigenvalues(J);
    const double lm = ev.x, lM = ev.z;
    const double lm2 = lm * lm;
    const double bound = std::min({k_Omega,
                                   4.0 * k_Omega * k_R * lm2 / (k_Omega * k_Omega * lM + 4.0 * k_R * lm2),
                                   std::sqrt(k_R * lm)});
    return 0.9 * bound;
}

Gains resolve_gains(Gains g, const Mat3& J)
{
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0))
            throw ValidationError(std::string("gain ") + name + " must be positive");
    };
    positive(g.k_x, "k_x");
    positive(g.k_v, "k_v");
    positive(g.k_R, "k_R");
    positive(g.k_Omega, "k_Omega");
    positive(g.k_R_hat, "k_R_hat");
    positive(g.k_R_tilde, "k_R_tilde");
    positive(g.k_Omega_tilde, "k_Omega_tilde");
    if (g.k_I < 0.0)
        throw ValidationError("gain k_I must be non-negative");
    if (g.c < 0.0)
        throw ValidationError("gain c must be non-negative");

    if (g.c == 0.0)
        g.c = default_cross_term(g.k_R_tilde, g.k_Omega_tilde, J);

    // W(c) for the tilde-error certificate must be positive definite.
    const Vec3 ev = sym_eigenvalues(J);
    const double w11 = g.c * g.k_R_tilde / ev.z;
    const double w12 = -g.c * g.k_Omega_tilde / (2.0 * ev.x);
    const double w22 = g.k_Omega_tilde - g.c;
    const auto wev = sym_eigenvalues_2x2(w11, w12, w22);
    if (wev[0] <= 0.0)
        throw IndefiniteW("cross-term c makes W indefinite (c = " + std::to_string(g.c) + ")");
    return g;
}

PositionControlOut position_control(const RigidBodyState& s, const FlatTrajectory& traj,
                                    double t, double h, const Gains& g, double m, double grav)
{
    const FlatSample f = traj(t);
    const Vec3 e_x = s.x - f.x_d;
    const Vec3 e_v = s.v - f.v_d;

    PositionControlOut out;
    out.F = -g.k_x * e_x - g.k_v * e_v - (m * grav) * Vec3{0, 0, 1} + m * f.a_d;
    if (norm(out.F) < kThrustEpsilon)
        throw DegenerateThrust("commanded thrust vector is numerically zero");
    out.f = -dot(out.F, s.R.col(2) /* R e3 */);
    out.setpoint = attitude_from_flat(traj, t, h, g.k_x, g.k_v, e_x, e_v, m, grav);
    return out;
}

Vec3 geometric_pd_moment(const RigidBodyState& s, const AttitudeSetpoint& sp, const Gains& g,
                         const Mat3& J)
{
    const AttitudeErrors e = attitude_errors(s.R, s.Omega, sp.R_d, sp.Omega_d);
    const Vec3 mu = -g.k_R * e.e_R - g.k_Omega * e.e_Omega;
    const Mat3 rt_rd = transpose(s.R.matrix()) * sp.R_d.matrix();
    return mu + cross(s.Omega, J * s.Omega)
        - J * (hat(s.Omega) * (rt_rd * sp.Omega_d) - rt_rd * sp.dOmega_d);
}

std::pair<Vec3, PidState> geometric_pid_moment(const RigidBodyState& s,
                                               const AttitudeSetpoint& sp, const Gains& g,
                                               const Mat3& J, PidState is, double dt,
                                               double clamp_limit)
{
    const AttitudeErrors e = attitude_errors(s.R, s.Omega, sp.R_d, sp.Omega_d);
    is.integral += dt * (e.e_R + g.c * e.e_Omega);
    if (g.k_I > 0.0 && clamp_limit > 0.0) {
        // Keep the integral contribution per axis within the clamp.
        const double cap = clamp_limit / g.k_I;
        for (int i = 0; i < 3; ++i)
            is.integral[i] = std::clamp(is.integral[i], -cap, cap);
    }
    const Vec3 M = geometric_pd_moment(s, sp, g, J) - g.k_I * is.integral;
    return {M, is};
}

Vec3 saturate_moment(const Vec3& M, double limit)
{
    if (!(limit > 0.0))
        throw ValidationError("saturation limit must be positive");
    return {std::clamp(M.x, -limit, limit), std::clamp(M.y, -limit, limit),
            std::clamp(M.z, -limit, limit)};
}

namespace {

double wrap_angle(double a)
{
    while (a > std::numbers::pi)
        a -= 2.0 * std::numbers::pi;
    while (a <= -std::numbers::pi)
        a += 2.0 * std::numbers::pi;
    return a;
}

void check_gimbal(double pitch)
{
    if (std::abs(std::abs(wrap_angle(pitch)) - 0.5 * std::numbers::pi) < kGimbalMargin)
        throw GimbalProximity("pitch within margin of +-90 deg");
}

// eta_dot = T(eta) * Omega for Z-Y-X angles.
Mat3 euler_rate_matrix(const Vec3& eta)
{
    check_gimbal(eta.y);
    const double sr = std::sin(eta.x), cr = std::cos(eta.x);
    const double tp = std::tan(eta.y), cp = std::cos(eta.y);
    return Mat3::from_rows({1.0, sr * tp, cr * tp}, {0.0, cr, -sr}, {0.0, sr / cp, cr / cp});
}

}  // namespace

EulerL1Output euler_l1_moment(const RigidBodyState& s, const AttitudeSetpoint& sp,
                              const EulerL1State& st, const Gains& g, const Mat3& J,
                              const Mat3& J_inv, double filter_a, double dt,
                              Integrator ref_integrator)
{
    const EulerZyx true_e = euler_zyx_from(s.R);
    check_gimbal(true_e.pitch);
    const Vec3 eta{true_e.roll, true_e.pitch, true_e.yaw};
    const EulerZyx des_e = euler_zyx_from(sp.R_d);
    const Vec3 eta_d{des_e.roll, des_e.pitch, des_e.yaw};

    const Mat3 T = euler_rate_matrix(eta);
    const Mat3 T_hat = euler_rate_matrix(st.eta_hat);

    // All attitude states and rates live in the Euler chart: angles compare
    // by plain differences and rates as Euler rates nu = T(eta) Omega. The
    // charts of the two models are never transported into each other.
    const Vec3 nu = T * s.Omega;
    const Vec3 nu_hat = T_hat * st.omega_hat;
    const Vec3 nu_d = euler_rate_matrix(eta_d) * sp.Omega_d;

    // Reference model toward the desired trajectory.
    const Vec3 e_eta_hat = st.eta_hat - eta_d;
    const Vec3 e_nu_hat = nu_hat - nu_d;
    const Vec3 mu_hat_1 =
        -g.k_R_hat * (transpose(T_hat) * e_eta_hat) - g.k_Omega_tilde * (transpose(T_hat) * e_nu_hat);

    auto [filt_next, theta_filt] = lowpass_step(st.adapt.filter_state, st.adapt.theta_hat,
                                                filter_a, dt);

    const Vec3 mu_hat_2 = st.adapt.theta_hat - theta_filt;
    const Vec3 M_hat = mu_hat_1 + mu_hat_2 + cross(st.omega_hat, J * st.omega_hat)
        - J * (hat(st.omega_hat) * sp.Omega_d - sp.dOmega_d);

    // True model toward the reference model.
    const Vec3 e_eta_tilde = st.eta_hat - eta;
    const Vec3 e_nu_tilde = nu_hat - nu;
    const Vec3 mu_1 = mu_hat_1 - theta_filt + g.k_R_tilde * (transpose(T) * e_eta_tilde)
        + g.k_Omega_tilde * (transpose(T) * e_nu_tilde);
    const Vec3 M = mu_1 + cross(s.Omega, J * s.Omega)
        - J * (hat(s.Omega) * sp.Omega_d - sp.dOmega_d);

    const Vec3 y = -(e_nu_tilde + g.c * (transpose(J_inv) * e_eta_tilde));

    EulerL1Output out;
    out.M = M;
    out.M_hat = M_hat;
    out.theta_filt = theta_filt;
    out.next = st;
    out.next.adapt.filter_state = filt_next;
    out.next.adapt = adaptation_step(std::move(out.next.adapt), y, dt);

    // Advance the Euler reference model under M_hat.
    auto deriv = [&](const Vec3& eta_v, const Vec3& om) {
        return std::pair<Vec3, Vec3>{euler_rate_matrix(eta_v) * om,
                                     J_inv * (M_hat - cross(om, J * om))};
    };
    if (ref_integrator == Integrator::euler) {
        auto [eta_dot, om_dot] = deriv(st.eta_hat, st.omega_hat);
        out.next.eta_hat = st.eta_hat + dt * eta_dot;
        out.next.omega_hat = st.omega_hat + dt * om_dot;
    } else {
        const auto k1 = deriv(st.eta_hat, st.omega_hat);
        const auto k2 = deriv(st.eta_hat + 0.5 * dt * k1.first, st.omega_hat + 0.5 * dt * k1.second);
        const auto k3 = deriv(st.eta_hat + 0.5 * dt * k2.first, st.omega_hat + 0.5 * dt * k2.second);
        const auto k4 = deriv(st.eta_hat + dt * k3.first, st.omega_hat + dt * k3.second);
        out.next.eta_hat =
            st.eta_hat + (dt / 6.0) * (k1.first + 2.0 * k2.first + 2.0 * k3.first + k4.first);
        out.next.omega_hat =
            st.omega_hat + (dt / 6.0) * (k1.second + 2.0 * k2.second + 2.0 * k3.second + k4.second);
    }
    return out;
}

}  // namespace so3l1
