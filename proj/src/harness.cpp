#include "so3l1/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <thread>

namespace so3l1 {

const char* to_string(ControllerKind k)
{
    switch (k) {
        case ControllerKind::geo_l1: return "geo-l1";
        case ControllerKind::geo_pd: return "geo-pd";
        case ControllerKind::geo_pid: return "geo-pid";
        case ControllerKind::euler_l1: return "euler-l1";
    }
    return "?";
}

const char* to_string(TrajectoryKind k)
{
    switch (k) {
        case TrajectoryKind::circle: return "circle";
        case TrajectoryKind::sigmoid_circle: return "sigmoid_circle";
        case TrajectoryKind::hover: return "hover";
        case TrajectoryKind::attitude_step: return "attitude_step";
    }
    return "?";
}

const char* to_string(Integrator k)
{
    switch (k) {
        case Integrator::rk4: return "rk4";
        case Integrator::euler: return "euler";
        case Integrator::expmap: return "expmap";
    }
    return "?";
}

const char* to_string(CouplingMode k)
{
    return k == CouplingMode::coupled ? "coupled" : "sampled";
}

ScenarioConfig validate_config(ScenarioConfig cfg)
{
    auto require = [](bool ok, const char* what) {
        if (!ok)
            throw ValidationError(what);
    };
    require(cfg.dt > 0.0, "sim.dt must be positive");
    require(cfg.duration > 0.0, "sim.duration must be positive");
    require(cfg.duration >= cfg.dt, "sim.duration must be at least sim.dt");
    require(cfg.log_every >= 0, "sim.log_every must be non-negative");
    require(cfg.m > 0.0, "plant.m must be positive");
    require(cfg.g > 0.0, "plant.g must be positive");
    require(cfg.m_a >= 0.0, "plant.m_a must be non-negative");
    require(cfg.gamma > 0.0, "l1.gamma must be positive");
    require(cfg.filter_a > 0.0, "l1.a must be positive");
    require(cfg.theta_max > 0.0, "l1.theta_max must be positive");
    require(cfg.eps_proj > 0.0, "l1.eps_proj must be positive");
    require(!cfg.saturation_on || cfg.saturation_limit > 0.0,
            "saturation.limit must be positive");
    require(cfg.metrics_window_frac > 0.0 && cfg.metrics_window_frac <= 1.0,
            "metrics.window_frac must be in (0, 1]");
    if (cfg.trajectory == TrajectoryKind::circle)
        require(cfg.rho > 0.0, "trajectory.rho must be positive");
    if (cfg.trajectory == TrajectoryKind::sigmoid_circle) {
        require(cfg.rho > 0.0, "trajectory.rho must be positive");
        require(cfg.sig_b > 0.0, "trajectory.b must be positive");
    }

    plant_params(cfg);  // validates m, J, J_bar
    cfg.gains = resolve_gains(cfg.gains, cfg.J);
    return cfg;
}

PlantParams plant_params(const ScenarioConfig& cfg)
{
    return PlantParams::create(cfg.m, cfg.J, cfg.J + added_mass_inertia(cfg.m_a, cfg.r), cfg.g);
}

DisturbanceSpec disturbance_spec(const ScenarioConfig& cfg)
{
    DisturbanceSpec spec;
    if (norm(cfg.theta_constant) > 0.0)
        spec.components.push_back(ConstantDisturbance{cfg.theta_constant});
    if (cfg.harmonic)
        spec.components.push_back(HarmonicDisturbance{cfg.harmonic_scale});
    if (cfg.m_a > 0.0)
        spec.components.push_back(AddedMassDisturbance{cfg.m_a, cfg.r});
    return spec;
}

FlatTrajectory flat_trajectory(const ScenarioConfig& cfg)
{
    switch (cfg.trajectory) {
        case TrajectoryKind::circle:
            return [rho = cfg.rho, om = cfg.omega](double t) { return circle_flat(t, rho, om); };
        case TrajectoryKind::sigmoid_circle: {
            SigmoidCircleParams p;
            p.rho = cfg.rho;
            p.x0 = cfg.x0;
            p.y0 = cfg.y0;
            p.z0 = cfg.z0;
            p.a = cfg.sig_a;
            p.b = cfg.sig_b;
            p.c = cfg.sig_c;
            p.t0 = cfg.sig_t0;
            return [p](double t) { return sigmoid_circle_flat(t, p); };
        }
        case TrajectoryKind::hover:
        case TrajectoryKind::attitude_step: {
            const Vec3 anchor{cfg.x0, cfg.y0, cfg.z0};
            return [anchor](double t) {
                FlatSample f;
                f.t = t;
                f.x_d = anchor;
                return f;
            };
        }
    }
    throw ValidationError("unknown trajectory kind");
}

namespace {

RotationMatrix rotation_from_deg(double roll_deg, double pitch_deg, double yaw_deg)
{
    return RotationMatrix::from_euler_zyx(deg_to_rad(roll_deg), deg_to_rad(pitch_deg),
                                          deg_to_rad(yaw_deg));
}

double pd_lyapunov(const AttitudeErrors& e, double psi_val, const Gains& g, const Mat3& J)
{
    return 0.5 * dot(e.e_Omega, J * e.e_Omega) + g.k_R * psi_val + g.c * dot(e.e_R, e.e_Omega);
}

}  // namespace

SimLog run_scenario(const ScenarioConfig& cfg_in)
{
    const ScenarioConfig cfg = validate_config(cfg_in);
    const PlantParams p = plant_params(cfg);
    const DisturbanceSpec dist = disturbance_spec(cfg);
    const FlatTrajectory traj = flat_trajectory(cfg);
    const bool flat = cfg.trajectory != TrajectoryKind::attitude_step;
    const bool is_geo_l1 = cfg.controller == ControllerKind::geo_l1;
    const bool is_euler_l1 = cfg.controller == ControllerKind::euler_l1;
    const Gains& g = cfg.gains;

    RigidBodyState state;
    state.R = rotation_from_deg(cfg.roll0_deg, cfg.pitch0_deg, cfg.yaw0_deg);
    state.Omega = cfg.omega0;
    {
        const FlatSample f0 = traj(0.0);
        state.x = f0.x_d;
        state.v = f0.v_d;
    }

    const Vec3 ref_euler0{deg_to_rad(cfg.ref_roll0_deg), deg_to_rad(cfg.ref_pitch0_deg),
                          deg_to_rad(cfg.ref_yaw0_deg)};
    ReferenceState ref{rotation_from_deg(cfg.ref_roll0_deg, cfg.ref_pitch0_deg,
                                         cfg.ref_yaw0_deg),
                       cfg.ref_omega0};
    AdaptationState adapt = AdaptationState::create(
        Mat3::diag(cfg.gamma, cfg.gamma, cfg.gamma), cfg.theta_max, cfg.eps_proj);
    EulerL1State euler_state{ref_euler0, cfg.ref_omega0, adapt};
    PidState pid;
    const double pid_clamp = cfg.saturation_on ? cfg.saturation_limit : 5.0;

    const AttitudeSetpoint static_sp = attitude_setpoint_static(
        deg_to_rad(cfg.step_roll_deg), deg_to_rad(cfg.step_pitch_deg),
        deg_to_rad(cfg.step_yaw_deg));

    auto control_setpoint = [&](const RigidBodyState& s,
                                double t) -> std::pair<double, AttitudeSetpoint> {
        if (flat) {
            const PositionControlOut pc = position_control(s, traj, t, cfg.dt, g, cfg.m, cfg.g);
            return {pc.f, pc.setpoint};
        }
        const FlatSample anchor = traj(t);
        const Vec3 F = -g.k_x * (s.x - anchor.x_d) - g.k_v * (s.v - anchor.v_d)
            - (cfg.m * cfg.g) * Vec3{0, 0, 1};
        return {-dot(F, s.R.col(2)), static_sp};
    };

    // Initial-condition stability gate.
    {
        const auto [f0, sp0] = control_setpoint(state, 0.0);
        (void)f0;
        bool ok;
        if (is_geo_l1 || is_euler_l1) {
            const TildeErrors td = tilde_errors(state, ref);
            ok = td.psi_tilde < 2.0
                && norm_sq(td.e_Omega_tilde)
                    < (2.0 / p.lambda_min_J) * g.k_R_tilde * (2.0 - td.psi_tilde);
        } else {
            const double ps = psi(state.R, sp0.R_d);
            const AttitudeErrors e = attitude_errors(state.R, state.Omega, sp0.R_d, sp0.Omega_d);
            ok = ps < 2.0
                && norm_sq(e.e_Omega) < (2.0 / p.lambda_min_J) * g.k_R * (2.0 - ps);
        }
        if (!ok && !cfg.gate_override)
            throw ValidationError(
                "initial-condition stability gate violated; set init.gate_override = 1 to run");
    }

    const long n_steps = std::lround(cfg.duration / cfg.dt);

    SimLog log;
    log.dt = cfg.dt;
    log.controller = cfg.controller;
    log.c_used = g.c;
    log.gamma_min = cfg.gamma;
    const auto reserve = static_cast<std::size_t>(n_steps + 1);
    for (auto* v : {&log.t, &log.psi, &log.psi_hat, &log.psi_tilde, &log.e_omega,
                    &log.e_omega_hat, &log.e_omega_tilde, &log.f, &log.V})
        v->reserve(reserve);
    for (auto* v : {&log.x, &log.x_d, &log.theta, &log.theta_hat, &log.theta_filt, &log.M,
                    &log.M_hat, &log.e_R_true, &log.e_Omega_true, &log.e_R_tilde,
                    &log.e_Omega_tilde_vec, &log.theta_tilde_vec})
        v->reserve(reserve);

    for (long k = 0; k <= n_steps; ++k) {
        const double t = static_cast<double>(k) * cfg.dt;

        double thrust = 0.0;
        AttitudeSetpoint sp;
        Vec3 M_raw, M_hat_row, theta_hat_row, theta_filt_row;
        double psi_hat_row = 0.0, psi_tilde_row = 0.0;
        double e_om_hat_row = 0.0, e_om_tilde_row = 0.0;
        Vec3 e_R_tilde_row, e_Om_tilde_row, theta_tilde_row;
        double V_row = 0.0;

        L1Output l1out;
        EulerL1Output eout;

        try {
            std::tie(thrust, sp) = control_setpoint(state, t);

            switch (cfg.controller) {
                case ControllerKind::geo_pd:
                    M_raw = geometric_pd_moment(state, sp, g, cfg.J);
                    break;
                case ControllerKind::geo_pid:
                    std::tie(M_raw, pid) =
                        geometric_pid_moment(state, sp, g, cfg.J, pid, cfg.dt, pid_clamp);
                    break;
                case ControllerKind::geo_l1:
                    l1out = l1_control_step(state, ref, adapt, sp, g, cfg.J, p.J_inv,
                                            cfg.filter_a, cfg.dt, cfg.reference_integrator);
                    M_raw = l1out.M;
                    break;
                case ControllerKind::euler_l1:
                    eout = euler_l1_moment(state, sp, euler_state, g, cfg.J, p.J_inv,
                                           cfg.filter_a, cfg.dt, cfg.reference_integrator);
                    M_raw = eout.M;
                    break;
            }
        } catch (const Error& err) {
            log.diverged = true;
            log.failure = err.what();
            break;
        }

        const Vec3 M = cfg.saturation_on ? saturate_moment(M_raw, cfg.saturation_limit) : M_raw;
        const Vec3 th_e = theta_e_eval(dist, t, state.R, cfg.g);

        // Ground-truth uncertainty from the applied moment; back-solving mu
        // keeps the moment-channel identity exact under saturation.
        const Mat3 rt_rd = transpose(state.R.matrix()) * sp.R_d.matrix();
        const Vec3 mu_eff = M - cross(state.Omega, cfg.J * state.Omega)
            + cfg.J * (hat(state.Omega) * (rt_rd * sp.Omega_d) - rt_rd * sp.dOmega_d);
        const Vec3 th = theta_truth(mu_eff, state, sp, cfg.J, p.J_bar, th_e);

        const AttitudeErrors true_err = attitude_errors(state.R, state.Omega, sp.R_d, sp.Omega_d);
        const double psi_row = psi(state.R, sp.R_d);

        if (is_geo_l1) {
            psi_hat_row = psi(ref.R_hat, sp.R_d);
            psi_tilde_row = l1out.tilde.psi_tilde;
            e_om_hat_row = norm(l1out.ref_errors.e_Omega);
            e_om_tilde_row = norm(l1out.tilde.e_Omega_tilde);
            e_R_tilde_row = l1out.tilde.e_R_tilde;
            e_Om_tilde_row = l1out.tilde.e_Omega_tilde;
            theta_hat_row = adapt.theta_hat;
            theta_filt_row = l1out.theta_filt;
            M_hat_row = l1out.M_hat;
            theta_tilde_row = theta_tilde(adapt.theta_hat, th, state.R, ref.R_hat);
            V_row = 0.5 * dot(e_Om_tilde_row, cfg.J * e_Om_tilde_row)
                + g.k_R_tilde * psi_tilde_row + g.c * dot(e_R_tilde_row, e_Om_tilde_row)
                + 0.5 * norm_sq(theta_tilde_row) / cfg.gamma;
        } else if (is_euler_l1) {
            const ReferenceState eref{
                RotationMatrix::from_euler_zyx(euler_state.eta_hat.x, euler_state.eta_hat.y,
                                               euler_state.eta_hat.z),
                euler_state.omega_hat};
            const TildeErrors td = tilde_errors(state, eref);
            psi_hat_row = psi(eref.R_hat, sp.R_d);
            psi_tilde_row = td.psi_tilde;
            e_om_hat_row = norm(reference_errors(eref, sp).e_Omega);
            e_om_tilde_row = norm(td.e_Omega_tilde);
            e_R_tilde_row = td.e_R_tilde;
            e_Om_tilde_row = td.e_Omega_tilde;
            theta_hat_row = euler_state.adapt.theta_hat;
            theta_filt_row = eout.theta_filt;
            M_hat_row = eout.M_hat;
            theta_tilde_row = theta_tilde(theta_hat_row, th, state.R, eref.R_hat);
        } else {
            V_row = pd_lyapunov(true_err, psi_row, g, cfg.J);
        }

        log.t.push_back(t);
        log.x.push_back(state.x);
        log.x_d.push_back(traj(t).x_d);
        log.psi.push_back(psi_row);
        log.psi_hat.push_back(psi_hat_row);
        log.psi_tilde.push_back(psi_tilde_row);
        log.e_omega.push_back(norm(true_err.e_Omega));
        log.e_omega_hat.push_back(e_om_hat_row);
        log.e_omega_tilde.push_back(e_om_tilde_row);
        log.theta.push_back(th);
        log.theta_hat.push_back(theta_hat_row);
        log.theta_filt.push_back(theta_filt_row);
        log.M.push_back(M);
        log.M_hat.push_back(M_hat_row);
        log.f.push_back(thrust);
        log.V.push_back(V_row);
        log.e_R_true.push_back(true_err.e_R);
        log.e_Omega_true.push_back(true_err.e_Omega);
        log.e_R_tilde.push_back(e_R_tilde_row);
        log.e_Omega_tilde_vec.push_back(e_Om_tilde_row);
        log.theta_tilde_vec.push_back(theta_tilde_row);

        if (k == n_steps)
            break;

        try {
            state = integrate_step(state, thrust, M, th_e, p, cfg.dt, cfg.plant_integrator);
        } catch (const Error& err) {
            log.diverged = true;
            log.failure = err.what();
            break;
        }
        if (is_geo_l1) {
            ref = l1out.ref_next;
            adapt = l1out.adapt_next;
        } else if (is_euler_l1) {
            euler_state = eout.next;
        }

        const bool finite = is_finite(state.x) && is_finite(state.v)
            && is_finite(state.R.matrix()) && is_finite(state.Omega)
            && (!is_geo_l1 || (is_finite(ref.R_hat.matrix()) && is_finite(ref.Omega_hat)))
            && (!is_euler_l1
                || (is_finite(euler_state.eta_hat) && is_finite(euler_state.omega_hat)));
        if (!finite) {
            log.diverged = true;
            log.failure = "state left the finite range";
            break;
        }
    }

    // e-ISS bound column: constant beta * delta_V from the certificate
    // diagnostics (geo-l1 runs only; zero elsewhere).
    log.bound_beta_delta_v.assign(log.size(), 0.0);
    if (is_geo_l1 && !log.diverged && log.size() >= 2) {
        double psi_max = 0.0;
        for (double v : log.psi_tilde)
            psi_max = std::max(psi_max, v);
        const double psi_bound = std::min(psi_max, 2.0 - 1e-9);
        const LyapunovDiagnostics diag =
            lyapunov_diagnostics(log, g, cfg.J, cfg.gamma, psi_bound);
        log.bound_beta_delta_v.assign(log.size(), diag.beta * diag.delta_v);
    }
    return log;
}

Metrics compute_metrics(const SimLog& log, double t_start, double t_end)
{
    double sum_p = 0.0, sum_p2 = 0.0, sum_s = 0.0, sum_s2 = 0.0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < log.size(); ++k) {
        if (log.t[k] < t_start || log.t[k] > t_end)
            continue;
        const double pe = norm(log.x[k] - log.x_d[k]);
        sum_p += pe;
        sum_p2 += pe * pe;
        sum_s += log.psi[k];
        sum_s2 += log.psi[k] * log.psi[k];
        ++n;
    }
    if (n == 0)
        throw EmptyWindow("metrics window contains no samples");

    auto stats = [n](double s, double s2) {
        ChannelStats cs;
        cs.mean = s / static_cast<double>(n);
        cs.stddev = std::sqrt(std::max(0.0, s2 / static_cast<double>(n) - cs.mean * cs.mean));
        return cs;
    };
    return {stats(sum_p, sum_p2), stats(sum_s, sum_s2)};
}

LyapunovDiagnostics lyapunov_diagnostics(const SimLog& log, const Gains& gains, const Mat3& J,
                                         double gamma, double psi_bound)
{
    if (!(psi_bound >= 0.0 && psi_bound < 2.0))
        throw ValidationError("psi bound must lie in [0, 2)");
    if (!(gamma > 0.0))
        throw ValidationError("gamma must be positive");
    if (log.size() < 2)
        throw EmptyWindow("log too short for diagnostics");

    const Gains g = resolve_gains(gains, J);
    const Vec3 ev = sym_eigenvalues(J);
    const double lm = ev.x, lM = ev.z;

    const auto w_ev = sym_eigenvalues_2x2(g.c * g.k_R_tilde / lM,
                                          -g.c * g.k_Omega_tilde / (2.0 * lm),
                                          g.k_Omega_tilde - g.c);
    if (w_ev[0] <= 0.0)
        throw IndefiniteW("W is not positive definite");
    const auto w1_ev = sym_eigenvalues_2x2(0.5 * g.k_R_tilde, -0.5 * g.c, 0.5 * lm);
    if (w1_ev[0] <= 0.0)
        throw IndefiniteW("W1 is not positive definite");
    const auto w2_ev = sym_eigenvalues_2x2(g.k_R_tilde / (2.0 - psi_bound), 0.5 * g.c, 0.5 * lM);
    if (w2_ev[0] <= 0.0)
        throw IndefiniteW("W2 is not positive definite");

    LyapunovDiagnostics d;
    d.c = g.c;
    d.psi_bound = psi_bound;
    d.beta = w_ev[0] / w2_ev[1];

    const double gamma_inv = 1.0 / gamma;
    for (std::size_t k = 0; k < log.size(); ++k) {
        d.theta_b = std::max(d.theta_b, norm(log.theta[k]));
        d.theta_tilde_b = std::max(d.theta_tilde_b, norm(log.theta_tilde_vec[k]));
        d.e_omega_tilde_b = std::max(d.e_omega_tilde_b, norm(log.e_Omega_tilde_vec[k]));
        if (k + 1 < log.size())
            d.theta_dot_b =
                std::max(d.theta_dot_b, norm(log.theta[k + 1] - log.theta[k]) / log.dt);
    }
    const double delta = d.theta_tilde_b * (d.e_omega_tilde_b * d.theta_b + d.theta_dot_b)
        * gamma_inv;
    d.delta_v = 0.5 * d.theta_tilde_b * d.theta_tilde_b * gamma_inv + delta / d.beta;

    d.V.resize(log.size());
    for (std::size_t k = 0; k < log.size(); ++k) {
        d.V[k] = 0.5 * dot(log.e_Omega_tilde_vec[k], J * log.e_Omega_tilde_vec[k])
            + g.k_R_tilde * log.psi_tilde[k]
            + g.c * dot(log.e_R_tilde[k], log.e_Omega_tilde_vec[k])
            + 0.5 * norm_sq(log.theta_tilde_vec[k]) * gamma_inv;
    }
    d.V_dot.resize(log.size() - 1);
    for (std::size_t k = 0; k + 1 < log.size(); ++k) {
        d.V_dot[k] = (d.V[k + 1] - d.V[k]) / log.dt;
        if (d.V[k] > d.delta_v && d.V[k + 1] > d.V[k])
            ++d.decrease_violations;
        if (d.V_dot[k] + d.beta * d.V[k] > d.beta * d.delta_v)
            ++d.eiss_violations;
    }

    d.gate_psi = log.psi_tilde.front() < 2.0;
    d.gate_rate = norm_sq(log.e_Omega_tilde_vec.front())
        < (2.0 / lm) * g.k_R_tilde * (2.0 - log.psi_tilde.front());
    return d;
}

std::vector<double> default_sweep_angles()
{
    std::vector<double> out;
    for (int a = 0; a <= 180; a += 5)
        out.push_back(a == 180 ? 179.9 : static_cast<double>(a));
    return out;
}

std::vector<SweepCell> sweep_euler_vs_geometric(const SweepGridSpec& grid,
                                                const ScenarioConfig& base)
{
    const std::vector<double> angles =
        grid.angles_deg.empty() ? default_sweep_angles() : grid.angles_deg;

    std::vector<SweepCell> cells;
    for (ControllerKind ctrl : {ControllerKind::geo_l1, ControllerKind::euler_l1})
        for (double m_a : grid.m_a_values)
            for (double phi_hat : angles)
                for (double phi : angles) {
                    SweepCell c;
                    c.controller = ctrl;
                    c.m_a = m_a;
                    c.phi_hat0_deg = phi_hat;
                    c.phi0_deg = phi;
                    cells.push_back(c);
                }

    auto run_cell = [&](SweepCell& cell) {
        ScenarioConfig cfg = base;
        cfg.controller = cell.controller;
        cfg.trajectory = TrajectoryKind::attitude_step;
        cfg.step_roll_deg = cfg.step_pitch_deg = cfg.step_yaw_deg = 0.0;
        cfg.x0 = cfg.y0 = cfg.z0 = 0.0;
        cfg.theta_constant = {};
        cfg.harmonic = false;
        cfg.m_a = cell.m_a;
        cfg.duration = grid.duration;
        cfg.roll0_deg = cell.phi0_deg;
        cfg.pitch0_deg = cfg.yaw0_deg = 0.0;
        cfg.ref_roll0_deg = cell.phi_hat0_deg;
        cfg.ref_pitch0_deg = cfg.ref_yaw0_deg = 0.0;
        cfg.omega0 = {};
        cfg.ref_omega0 = {};
        cfg.saturation_on = false;
        try {
            const SimLog log = run_scenario(cfg);
            cell.psi_end = log.psi.empty() ? std::numeric_limits<double>::quiet_NaN()
                                           : log.psi.back();
            cell.failed = log.diverged || !(cell.psi_end <= grid.fail_threshold);
        } catch (const std::exception&) {
            cell.psi_end = std::numeric_limits<double>::quiet_NaN();
            cell.failed = true;
        }
    };

    const int workers =
        std::max(1, std::min<int>(grid.workers, static_cast<int>(cells.size())));
    if (workers == 1) {
        for (auto& c : cells)
            run_cell(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= cells.size())
                        return;
                    run_cell(cells[i]);
                }
            });
        for (auto& th : pool)
            th.join();
    }
    return cells;
}

StepResponseResult step_response_experiment(const ScenarioConfig& base, bool saturation_on)
{
    ScenarioConfig cfg = base;
    cfg.trajectory = TrajectoryKind::attitude_step;
    cfg.saturation_on = saturation_on;

    StepResponseResult out;
    cfg.controller = ControllerKind::geo_l1;
    out.geo_l1 = run_scenario(cfg);
    cfg.controller = ControllerKind::geo_pd;
    out.geo_pd = run_scenario(cfg);
    cfg.controller = ControllerKind::geo_pid;
    out.geo_pid = run_scenario(cfg);
    return out;
}

double settling_entry_time(const SimLog& log, double band)
{
    if (log.size() == 0 || log.diverged)
        return std::numeric_limits<double>::infinity();
    std::size_t k = log.size();
    while (k > 0 && log.psi[k - 1] < band)
        --k;
    if (k == log.size())
        return std::numeric_limits<double>::infinity();  // never inside at the end
    return log.t[k];
}

namespace {

void put(std::ostream& os, double v, char sep = ',')
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf << sep;
}

void put_last(std::ostream& os, double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf << '\n';
}

}  // namespace

void write_log_csv(const SimLog& log, std::ostream& os)
{
    os << "t,x1,x2,x3,xd1,xd2,xd3,psi,psi_hat,psi_tilde,"
          "e_omega,e_omega_hat,e_omega_tilde,"
          "theta1,theta2,theta3,theta_hat1,theta_hat2,theta_hat3,"
          "theta_filt1,theta_filt2,theta_filt3,"
          "M1,M2,M3,Mhat1,Mhat2,Mhat3,f,V,beta_delta_V\n";
    for (std::size_t k = 0; k < log.size(); ++k) {
        put(os, log.t[k]);
        for (int i = 0; i < 3; ++i)
            put(os, log.x[k][i]);
        for (int i = 0; i < 3; ++i)
            put(os, log.x_d[k][i]);
        put(os, log.psi[k]);
        put(os, log.psi_hat[k]);
        put(os, log.psi_tilde[k]);
        put(os, log.e_omega[k]);
        put(os, log.e_omega_hat[k]);
        put(os, log.e_omega_tilde[k]);
        for (int i = 0; i < 3; ++i)
            put(os, log.theta[k][i]);
        for (int i = 0; i < 3; ++i)
            put(os, log.theta_hat[k][i]);
        for (int i = 0; i < 3; ++i)
            put(os, log.theta_filt[k][i]);
        for (int i = 0; i < 3; ++i)
            put(os, log.M[k][i]);
        for (int i = 0; i < 3; ++i)
            put(os, log.M_hat[k][i]);
        put(os, log.f[k]);
        put(os, log.V[k]);
        put_last(os, log.bound_beta_delta_v[k]);
    }
}

void write_log_csv(const SimLog& log, const std::string& path)
{
    std::ofstream os(path);
    if (!os)
        throw IoError("cannot open " + path + " for writing");
    write_log_csv(log, os);
    if (!os)
        throw IoError("write failed for " + path);
}

void write_sweep_csv(const std::vector<SweepCell>& cells, std::ostream& os)
{
    os << "phi_hat0_deg,phi0_deg,m_a,controller,psi_3s,failed\n";
    for (const auto& c : cells) {
        put(os, c.phi_hat0_deg);
        put(os, c.phi0_deg);
        put(os, c.m_a);
        os << to_string(c.controller) << ',';
        put(os, c.psi_end);
        os << (c.failed ? 1 : 0) << '\n';
    }
}

void write_sweep_csv(const std::vector<SweepCell>& cells, const std::string& path)
{
    std::ofstream os(path);
    if (!os)
        throw IoError("cannot open " + path + " for writing");
    write_sweep_csv(cells, os);
    if (!os)
        throw IoError("write failed for " + path);
}

}  // namespace so3l1
