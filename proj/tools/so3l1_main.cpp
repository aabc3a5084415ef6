// so3l1 - command-line front end: scenario runs, the preset experiments,
// CSV logs and SVG plots.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "so3l1/config.hpp"
#include "so3l1/plots.hpp"

namespace {

using namespace so3l1;

struct SharedOpts {
    std::optional<double> dt;
    std::optional<double> duration;
    std::optional<std::string> controller;
    std::string out = ".";
    int workers = 8;
};

void add_shared(CLI::App* cmd, SharedOpts& o)
{
    cmd->add_option("--dt", o.dt, "integration step [s]");
    cmd->add_option("--duration", o.duration, "simulated time [s]");
    cmd->add_option("--controller", o.controller,
                    "controller: geo-l1 | geo-pd | geo-pid | euler-l1");
    cmd->add_option("--out", o.out, "output directory")->capture_default_str();
    cmd->add_option("--workers", o.workers, "worker threads for batch runs")
        ->capture_default_str();
}

ControllerKind controller_from(const std::string& name)
{
    if (name == "geo-l1")
        return ControllerKind::geo_l1;
    if (name == "geo-pd")
        return ControllerKind::geo_pd;
    if (name == "geo-pid")
        return ControllerKind::geo_pid;
    if (name == "euler-l1")
        return ControllerKind::euler_l1;
    throw ValidationError("unknown controller '" + name + "'");
}

void apply_shared(ScenarioConfig& cfg, const SharedOpts& o)
{
    if (o.dt)
        cfg.dt = *o.dt;
    if (o.duration)
        cfg.duration = *o.duration;
    if (o.controller)
        cfg.controller = controller_from(*o.controller);
}

int resolve_workers(const SharedOpts& o)
{
    if (const char* env = std::getenv("SO3L1_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1)
            return static_cast<int>(v);
        std::cerr << "warning: ignoring malformed SO3L1_WORKERS='" << env << "'\n";
    }
    return o.workers;
}

std::string out_path(const SharedOpts& o, const std::string& name)
{
    std::filesystem::create_directories(o.out);
    return (std::filesystem::path(o.out) / name).string();
}

void print_summary(const std::string& name, const SimLog& log, double window_frac)
{
    if (log.diverged) {
        std::cout << name << ": DIVERGED after " << (log.t.empty() ? 0.0 : log.t.back())
                  << " s (" << log.failure << ")\n";
        return;
    }
    const double t_end = log.t.back();
    const Metrics m = compute_metrics(log, (1.0 - window_frac) * t_end, t_end);
    std::cout << name << ": psi(end) = " << log.psi.back() << ", window mean |x - x_d| = "
              << m.position_error.mean << " m, mean psi = " << m.psi.mean << "\n";
}

// Runs one scenario, writes CSV and plots; true when the run diverged.
bool run_and_emit(const ScenarioConfig& cfg, const SharedOpts& o, const std::string& stem)
{
    const SimLog log = run_scenario(cfg);
    write_log_csv(log, out_path(o, stem + ".csv"));
    if (log.size() > 0)  // a run may fault before its first sample
        emit_plots(log, out_path(o, stem));
    print_summary(stem, log, cfg.metrics_window_frac);
    return log.diverged;
}

ScenarioConfig case1_preset()
{
    ScenarioConfig cfg;
    cfg.trajectory = TrajectoryKind::circle;
    cfg.rho = 1.0;
    cfg.omega = 2.0;
    cfg.theta_constant = {0.95, 0.25, -0.5};
    cfg.m_a = 0.5;
    cfg.r = {0.2, 0.2, 0.2};
    cfg.roll0_deg = 178.0;
    cfg.duration = 10.0;
    return cfg;
}

ScenarioConfig case2_preset()
{
    ScenarioConfig cfg = case1_preset();
    cfg.theta_constant = {};
    cfg.harmonic = true;
    cfg.roll0_deg = 30.0;
    cfg.duration = 20.0;
    return cfg;
}

ScenarioConfig step_preset()
{
    ScenarioConfig cfg;
    cfg.trajectory = TrajectoryKind::attitude_step;
    cfg.step_roll_deg = cfg.step_pitch_deg = cfg.step_yaw_deg = 30.0;
    cfg.m_a = 0.5;
    cfg.r = {0.2, 0.2, 0.2};
    cfg.harmonic = true;
    cfg.duration = 5.0;
    cfg.gains.k_I = 2.0;
    cfg.saturation_limit = 5.0;
    return cfg;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"geometric adaptive attitude control - quadrotor simulation"};
    app.require_subcommand(1);

    SharedOpts opt;

    std::string config_path;
    auto* sim = app.add_subcommand("simulate", "run a scenario from a config file");
    sim->add_option("config", config_path, "scenario config file")->required();
    add_shared(sim, opt);

    auto* case1 = app.add_subcommand(
        "case1", "circle tracking, constant disturbance + added mass, near-inverted start");
    add_shared(case1, opt);

    auto* case2 = app.add_subcommand("case2", "circle tracking, harmonic disturbance + added mass");
    add_shared(case2, opt);

    double sweep_step_deg = 5.0;
    std::vector<double> sweep_mas{0.0, 0.25, 0.5};
    auto* sweep = app.add_subcommand("sweep", "initial-condition sweep, geo-l1 vs euler-l1");
    sweep->add_option("--angle-step", sweep_step_deg, "grid step [deg]")->capture_default_str();
    sweep->add_option("--m-a", sweep_mas, "added masses [kg]")->capture_default_str();
    add_shared(sweep, opt);

    bool no_saturation = false;
    double sat_limit = 5.0;
    auto* step = app.add_subcommand("step", "30/30/30 deg step, geo-l1 vs geo-pd vs geo-pid");
    step->add_flag("--no-saturation", no_saturation, "disable the input saturation");
    step->add_option("--limit", sat_limit, "saturation limit [N m]")->capture_default_str();
    add_shared(step, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        bool diverged = false;

        if (sim->parsed()) {
            ScenarioConfig cfg = load_config(config_path);
            apply_shared(cfg, opt);
            const std::string stem = std::filesystem::path(config_path).stem().string();
            diverged = run_and_emit(cfg, opt, stem.empty() ? "run" : stem);
        } else if (case1->parsed() || case2->parsed()) {
            const bool is1 = case1->parsed();
            ScenarioConfig cfg = is1 ? case1_preset() : case2_preset();
            apply_shared(cfg, opt);
            const std::string stem = is1 ? "case1" : "case2";
            if (opt.controller) {
                diverged = run_and_emit(cfg, opt, stem + "_" + *opt.controller);
            } else {
                cfg.controller = ControllerKind::geo_l1;
                diverged |= run_and_emit(cfg, opt, stem + "_geo-l1");
                cfg.controller = ControllerKind::geo_pd;
                cfg.gate_override = true;  // the PD arm starts outside its certificate basin
                diverged |= run_and_emit(cfg, opt, stem + "_geo-pd");
            }
        } else if (sweep->parsed()) {
            ScenarioConfig base;
            base.r = {0.2, 0.2, 0.2};
            if (opt.dt)
                base.dt = *opt.dt;
            SweepGridSpec grid;
            if (!(sweep_step_deg > 0.0))
                throw ValidationError("--angle-step must be positive");
            for (double a = 0.0; a <= 180.0; a += sweep_step_deg)
                grid.angles_deg.push_back(a >= 180.0 ? 179.9 : a);
            grid.m_a_values = sweep_mas;
            if (opt.duration)
                grid.duration = *opt.duration;
            grid.workers = resolve_workers(opt);
            const auto cells = sweep_euler_vs_geometric(grid, base);
            write_sweep_csv(cells, out_path(opt, "sweep.csv"));
            emit_sweep_plots(cells, out_path(opt, "sweep"));
            std::size_t failed = 0;
            for (const auto& c : cells)
                failed += c.failed ? 1u : 0u;
            std::cout << "sweep: " << cells.size() << " runs, " << failed << " failed; grid "
                      << grid.angles_deg.size() << "x" << grid.angles_deg.size() << "x"
                      << grid.m_a_values.size() << " per controller\n";
        } else if (step->parsed()) {
            ScenarioConfig cfg = step_preset();
            cfg.saturation_limit = sat_limit;
            if (opt.dt)
                cfg.dt = *opt.dt;
            if (opt.duration)
                cfg.duration = *opt.duration;
            const StepResponseResult res = step_response_experiment(cfg, !no_saturation);
            const std::string tag = no_saturation ? "_nosat" : "_sat";
            struct Arm {
                const char* name;
                const SimLog* log;
            };
            const Arm arms[] = {{"geo-l1", &res.geo_l1},
                                {"geo-pd", &res.geo_pd},
                                {"geo-pid", &res.geo_pid}};
            for (const Arm& arm : arms) {
                const std::string stem = std::string("step_") + arm.name + tag;
                write_log_csv(*arm.log, out_path(opt, stem + ".csv"));
                emit_plots(*arm.log, out_path(opt, stem));
                print_summary(stem, *arm.log, cfg.metrics_window_frac);
                diverged |= arm.log->diverged;
                std::cout << "  settling into psi < 0.05: t = "
                          << settling_entry_time(*arm.log, 0.05) << " s\n";
            }
        }

        return diverged ? 2 : 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
