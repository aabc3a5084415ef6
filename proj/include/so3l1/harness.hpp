// harness.hpp - scenario configuration and execution, experiment families,
// metrics and Lyapunov diagnostics.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "so3l1/controllers.hpp"
#include "so3l1/disturbances.hpp"

namespace so3l1 {

enum class ControllerKind { geo_l1, geo_pd, geo_pid, euler_l1 };
enum class TrajectoryKind { circle, sigmoid_circle, hover, attitude_step };

// How the controller meets the plant in simulation:
//   coupled  - one ODE: control laws, adaptation and filter are evaluated
//              inside the integrator stages (the continuous closed loop).
//   sampled  - zero-order hold: the controller runs once per dt and its
//              output is held across the step (a 1/dt Hz digital loop).
enum class CouplingMode { coupled, sampled };

const char* to_string(ControllerKind k);
const char* to_string(TrajectoryKind k);
const char* to_string(Integrator k);
const char* to_string(CouplingMode k);

struct ScenarioConfig {
    // plant
    double m = 1.129;  // kg
    Mat3 J = Mat3::diag(6.968e-3, 6.211e-3, 10.34e-3);
    double m_a = 0.0;          // kg, attached mass (unknown to the controller)
    Vec3 r{0.2, 0.2, 0.2};     // m, body position of the attached mass
    double g = 9.81;

    ControllerKind controller = ControllerKind::geo_l1;
    Gains gains;

    // adaptation
    double gamma = 1e6;
    double filter_a = 2.0;     // low-pass pole, rad/s
    double theta_max = 5.0;    // N m
    double eps_proj = 0.1;

    // trajectory
    TrajectoryKind trajectory = TrajectoryKind::circle;
    double rho = 1.0;
    double omega = 2.0;
    double x0 = 0.0, y0 = 0.0, z0 = 0.0;  // circle/hover center, step anchor
    double sig_a = 13.0, sig_b = 1.0, sig_c = 0.1, sig_t0 = 80.0;
    double step_roll_deg = 0.0, step_pitch_deg = 0.0, step_yaw_deg = 0.0;

    // disturbance (the added-mass moment follows m_a and r automatically)
    Vec3 theta_constant;
    bool harmonic = false;
    Vec3 harmonic_scale{1.0, 1.0, 1.0};

    // simulation
    CouplingMode coupling = CouplingMode::coupled;
    double dt = 1e-4;       // integration step; the coupled adaptation loop
                            // needs dt <~ 1.5e-4 at gamma = 1e6
    long log_every = 0;     // log stride in steps; 0 means "about 1 kHz"
    double duration = 10.0;

    // initial conditions (degrees, matching the config file keys)
    double roll0_deg = 0.0, pitch0_deg = 0.0, yaw0_deg = 0.0;
    double ref_roll0_deg = 0.0, ref_pitch0_deg = 0.0, ref_yaw0_deg = 0.0;
    Vec3 omega0;
    Vec3 ref_omega0;
    bool gate_override = false;

    bool saturation_on = false;
    double saturation_limit = 5.0;  // N m, per axis

    Integrator plant_integrator = Integrator::rk4;
    Integrator reference_integrator = Integrator::rk4;

    double metrics_window_frac = 0.25;  // trailing fraction used by default metrics
};

// Resolves gains.c, checks every invariant; throws ValidationError/IndefiniteW.
ScenarioConfig validate_config(ScenarioConfig cfg);

PlantParams plant_params(const ScenarioConfig& cfg);       // J_bar = J + J_ma
DisturbanceSpec disturbance_spec(const ScenarioConfig& cfg);

// Flat-output generator for circle / sigmoid_circle / hover; for
// attitude_step the hover anchor (x0, y0, z0) is used.
FlatTrajectory flat_trajectory(const ScenarioConfig& cfg);

struct SimLog {
    double dt = 0.0;
    ControllerKind controller = ControllerKind::geo_l1;
    bool diverged = false;
    std::string failure;  // empty unless diverged

    // Uniform grid t = k dt including the final time.
    std::vector<double> t;
    std::vector<Vec3> x, x_d;
    std::vector<double> psi, psi_hat, psi_tilde;
    std::vector<double> e_omega, e_omega_hat, e_omega_tilde;  // norms
    std::vector<Vec3> theta, theta_hat, theta_filt;
    std::vector<Vec3> M, M_hat;
    std::vector<double> f;
    std::vector<double> V;
    std::vector<double> bound_beta_delta_v;  // beta * delta_V, constant per run

    // Vector channels kept for diagnostics (not part of the CSV schema).
    std::vector<Vec3> e_R_true, e_Omega_true;
    std::vector<Vec3> e_R_tilde, e_Omega_tilde_vec, theta_tilde_vec;

    double c_used = 0.0;
    double gamma_min = 0.0;

    std::size_t size() const { return t.size(); }
};

// Deterministic: identical config produces a bit-identical log. A run whose
// state leaves the finite range (or whose controller faults, e.g. gimbal
// proximity for euler-l1) is marked diverged with the partial log retained.
SimLog run_scenario(const ScenarioConfig& cfg);

struct ChannelStats {
    double mean = 0.0;
    double stddev = 0.0;  // population convention (divide by N)
};

struct Metrics {
    ChannelStats position_error;  // ||x - x_d||_2
    ChannelStats psi;
};

// Statistics over t in [t_start, t_end]; throws EmptyWindow.
Metrics compute_metrics(const SimLog& log, double t_start, double t_end);

struct LyapunovDiagnostics {
    double c = 0.0;
    double beta = 0.0;      // lambda_min(W) / lambda_max(W2)
    double delta_v = 0.0;   // empirical disturbance floor
    double psi_bound = 0.0;
    // Empirical bounds harvested from the log.
    double theta_b = 0.0, theta_dot_b = 0.0, theta_tilde_b = 0.0, e_omega_tilde_b = 0.0;
    std::vector<double> V;
    std::vector<double> V_dot;       // forward differences
    int decrease_violations = 0;     // steps with V > delta_v and V(t+dt) > V(t)
    int eiss_violations = 0;         // steps with V_dot + beta V > beta delta_V
    bool gate_psi = false;           // psi_tilde(0) < 2
    bool gate_rate = false;          // tilde rate inequality at t = 0
};

// Certificate diagnostics for a geo-l1 log. psi_bound must satisfy
// max psi_tilde <= psi_bound < 2; throws IndefiniteW when c is too large.
LyapunovDiagnostics lyapunov_diagnostics(const SimLog& log, const Gains& gains, const Mat3& J,
                                         double gamma, double psi_bound);

struct SweepGridSpec {
    std::vector<double> angles_deg;          // both phi_hat(0) and phi(0) axes
    std::vector<double> m_a_values{0.0, 0.25, 0.5};
    double duration = 3.0;
    double fail_threshold = 0.5;             // psi at the horizon
    int workers = 8;
};

// 0, 5, ..., 175, 179.9 degrees (37 values; the endpoint is nudged off 180
// to keep the initial configuration error away from its maximum).
std::vector<double> default_sweep_angles();

struct SweepCell {
    double phi_hat0_deg = 0.0;
    double phi0_deg = 0.0;
    double m_a = 0.0;
    ControllerKind controller = ControllerKind::geo_l1;
    double psi_end = 0.0;
    bool failed = false;
};

// Initial-condition sweep comparing geo-l1 and euler-l1: for every
// (phi_hat0, phi0, m_a) both controllers run `duration` seconds from rest
// with zero desired angles. Cells are ordered controller-major, then m_a,
// then phi_hat0, then phi0, regardless of worker count.
std::vector<SweepCell> sweep_euler_vs_geometric(const SweepGridSpec& grid,
                                                const ScenarioConfig& base);

struct StepResponseResult {
    SimLog geo_l1;
    SimLog geo_pd;
    SimLog geo_pid;
};

// Step setpoint comparison with identical PD gains across controllers.
StepResponseResult step_response_experiment(const ScenarioConfig& base, bool saturation_on);

// First time after which psi stays below `band` for the rest of the log;
// +inf when it never settles.
double settling_entry_time(const SimLog& log, double band);

// CSV emission. Column order is the SimLog field order:
// t, x(3), xd(3), psi, psi_hat, psi_tilde, e_omega, e_omega_hat,
// e_omega_tilde, theta(3), theta_hat(3), theta_filt(3), M(3), Mhat(3), f, V,
// beta_delta_V.
void write_log_csv(const SimLog& log, std::ostream& os);
void write_log_csv(const SimLog& log, const std::string& path);  // IoError
void write_sweep_csv(const std::vector<SweepCell>& cells, std::ostream& os);
void write_sweep_csv(const std::vector<SweepCell>& cells, const std::string& path);

}  // namespace so3l1
