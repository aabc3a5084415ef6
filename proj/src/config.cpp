#include "so3l1/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

namespace so3l1 {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_numbers(const std::string& value, std::size_t count,
                                  const std::string& key, int line)
{
    std::vector<double> out;
    const char* p = value.c_str();
    while (*p) {
        char* end = nullptr;
        const double v = std::strtod(p, &end);
        if (end == p)
            throw ParseError("line " + std::to_string(line) + ": key '" + key
                             + "': expected a number near '" + std::string(p) + "'");
        out.push_back(v);
        p = end;
        while (*p == ' ' || *p == '\t')
            ++p;
    }
    if (out.size() != count)
        throw ParseError("line " + std::to_string(line) + ": key '" + key + "': expected "
                         + std::to_string(count) + " value(s), got " + std::to_string(out.size()));
    return out;
}

bool parse_flag(const std::string& value, const std::string& key, int line)
{
    if (value == "0" || value == "false")
        return false;
    if (value == "1" || value == "true")
        return true;
    throw ParseError("line " + std::to_string(line) + ": key '" + key
                     + "': expected 0/1, got '" + value + "'");
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(const Vec3& v) { return fmt(v.x) + " " + fmt(v.y) + " " + fmt(v.z); }

std::string fmt(const Mat3& m)
{
    std::string out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            if (!out.empty())
                out += ' ';
            out += fmt(m(r, c));
        }
    return out;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text)
{
    ScenarioConfig cfg;
    bool saw_x0 = false, saw_y0 = false, saw_z0 = false, saw_kind = false;

    using Handler = std::function<void(const std::string&, int)>;
    std::map<std::string, Handler> handlers;

    auto num = [](double& field) {
        return [&field](const std::string& v, int line) {
            field = parse_numbers(v, 1, "", line)[0];
        };
    };
    auto vec = [](Vec3& field) {
        return [&field](const std::string& v, int line) {
            const auto n = parse_numbers(v, 3, "", line);
            field = {n[0], n[1], n[2]};
        };
    };
    auto flag = [](bool& field) {
        return [&field](const std::string& v, int line) { field = parse_flag(v, "", line); };
    };

    handlers["controller"] = [&cfg](const std::string& v, int line) {
        if (v == "geo-l1")
            cfg.controller = ControllerKind::geo_l1;
        else if (v == "geo-pd")
            cfg.controller = ControllerKind::geo_pd;
        else if (v == "geo-pid")
            cfg.controller = ControllerKind::geo_pid;
        else if (v == "euler-l1")
            cfg.controller = ControllerKind::euler_l1;
        else
            throw ParseError("line " + std::to_string(line) + ": unknown controller '" + v + "'");
    };
    handlers["plant.m"] = num(cfg.m);
    handlers["plant.J"] = [&cfg](const std::string& v, int line) {
        const auto n = parse_numbers(v, 9, "plant.J", line);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                cfg.J(r, c) = n[static_cast<std::size_t>(3 * r + c)];
    };
    handlers["plant.m_a"] = num(cfg.m_a);
    handlers["plant.r"] = vec(cfg.r);
    handlers["plant.g"] = num(cfg.g);

    handlers["gains.k_x"] = num(cfg.gains.k_x);
    handlers["gains.k_v"] = num(cfg.gains.k_v);
    handlers["gains.k_R"] = num(cfg.gains.k_R);
    handlers["gains.k_Omega"] = num(cfg.gains.k_Omega);
    handlers["gains.k_R_hat"] = num(cfg.gains.k_R_hat);
    handlers["gains.k_R_tilde"] = num(cfg.gains.k_R_tilde);
    handlers["gains.k_Omega_tilde"] = num(cfg.gains.k_Omega_tilde);
    handlers["gains.k_I"] = num(cfg.gains.k_I);
    handlers["gains.c"] = num(cfg.gains.c);

    handlers["l1.gamma"] = num(cfg.gamma);
    handlers["l1.a"] = num(cfg.filter_a);
    handlers["l1.theta_max"] = num(cfg.theta_max);
    handlers["l1.eps_proj"] = num(cfg.eps_proj);

    handlers["trajectory.kind"] = [&cfg, &saw_kind](const std::string& v, int line) {
        saw_kind = true;
        if (v == "circle")
            cfg.trajectory = TrajectoryKind::circle;
        else if (v == "sigmoid_circle")
            cfg.trajectory = TrajectoryKind::sigmoid_circle;
        else if (v == "hover")
            cfg.trajectory = TrajectoryKind::hover;
        else if (v == "attitude_step")
            cfg.trajectory = TrajectoryKind::attitude_step;
        else
            throw ParseError("line " + std::to_string(line) + ": unknown trajectory kind '" + v
                             + "'");
    };
    handlers["trajectory.rho"] = num(cfg.rho);
    handlers["trajectory.omega"] = num(cfg.omega);
    handlers["trajectory.x0"] = [&](const std::string& v, int line) {
        saw_x0 = true;
        cfg.x0 = parse_numbers(v, 1, "trajectory.x0", line)[0];
    };
    handlers["trajectory.y0"] = [&](const std::string& v, int line) {
        saw_y0 = true;
        cfg.y0 = parse_numbers(v, 1, "trajectory.y0", line)[0];
    };
    handlers["trajectory.z0"] = [&](const std::string& v, int line) {
        saw_z0 = true;
        cfg.z0 = parse_numbers(v, 1, "trajectory.z0", line)[0];
    };
    handlers["trajectory.a"] = num(cfg.sig_a);
    handlers["trajectory.b"] = num(cfg.sig_b);
    handlers["trajectory.c"] = num(cfg.sig_c);
    handlers["trajectory.t0"] = num(cfg.sig_t0);
    handlers["trajectory.roll_deg"] = num(cfg.step_roll_deg);
    handlers["trajectory.pitch_deg"] = num(cfg.step_pitch_deg);
    handlers["trajectory.yaw_deg"] = num(cfg.step_yaw_deg);

    handlers["disturbance.constant"] = vec(cfg.theta_constant);
    handlers["disturbance.harmonic"] = flag(cfg.harmonic);
    handlers["disturbance.harmonic_scale"] = vec(cfg.harmonic_scale);

    handlers["sim.dt"] = num(cfg.dt);
    handlers["sim.duration"] = num(cfg.duration);

    handlers["init.roll_deg"] = num(cfg.roll0_deg);
    handlers["init.pitch_deg"] = num(cfg.pitch0_deg);
    handlers["init.yaw_deg"] = num(cfg.yaw0_deg);
    handlers["init.ref_roll_deg"] = num(cfg.ref_roll0_deg);
    handlers["init.ref_pitch_deg"] = num(cfg.ref_pitch0_deg);
    handlers["init.ref_yaw_deg"] = num(cfg.ref_yaw0_deg);
    handlers["init.omega"] = vec(cfg.omega0);
    handlers["init.ref_omega"] = vec(cfg.ref_omega0);
    handlers["init.gate_override"] = flag(cfg.gate_override);

    handlers["saturation.limit"] = [&cfg](const std::string& v, int line) {
        cfg.saturation_on = true;
        cfg.saturation_limit = parse_numbers(v, 1, "saturation.limit", line)[0];
    };

    auto integ = [](Integrator& field, bool allow_expmap) {
        return [&field, allow_expmap](const std::string& v, int line) {
            if (v == "rk4")
                field = Integrator::rk4;
            else if (v == "euler")
                field = Integrator::euler;
            else if (v == "expmap" && allow_expmap)
                field = Integrator::expmap;
            else
                throw ParseError("line " + std::to_string(line) + ": unknown integrator '" + v
                                 + "'");
        };
    };
    handlers["integrator.plant"] = integ(cfg.plant_integrator, true);
    handlers["integrator.reference"] = integ(cfg.reference_integrator, false);

    handlers["metrics.window_frac"] = num(cfg.metrics_window_frac);

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = handlers.find(key);
        if (it == handlers.end())
            throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        try {
            it->second(value, line_no);
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError("line " + std::to_string(line_no) + ": key '" + key + "': "
                             + e.what());
        }
    }

    // Hover default anchor when the center was not spelled out.
    if (saw_kind && cfg.trajectory == TrajectoryKind::hover && !saw_x0 && !saw_y0 && !saw_z0) {
        cfg.x0 = 0.0;
        cfg.y0 = -1.0;
        cfg.z0 = 1.0;
    }

    return validate_config(cfg);
}

ScenarioConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& cfg)
{
    std::ostringstream out;
    out << "controller = " << to_string(cfg.controller) << '\n';
    out << "plant.m = " << fmt(cfg.m) << '\n';
    out << "plant.J = " << fmt(cfg.J) << '\n';
    out << "plant.m_a = " << fmt(cfg.m_a) << '\n';
    out << "plant.r = " << fmt(cfg.r) << '\n';
    out << "plant.g = " << fmt(cfg.g) << '\n';
    out << "gains.k_x = " << fmt(cfg.gains.k_x) << '\n';
    out << "gains.k_v = " << fmt(cfg.gains.k_v) << '\n';
    out << "gains.k_R = " << fmt(cfg.gains.k_R) << '\n';
    out << "gains.k_Omega = " << fmt(cfg.gains.k_Omega) << '\n';
    out << "gains.k_R_hat = " << fmt(cfg.gains.k_R_hat) << '\n';
    out << "gains.k_R_tilde = " << fmt(cfg.gains.k_R_tilde) << '\n';
    out << "gains.k_Omega_tilde = " << fmt(cfg.gains.k_Omega_tilde) << '\n';
    out << "gains.k_I = " << fmt(cfg.gains.k_I) << '\n';
    out << "gains.c = " << fmt(cfg.gains.c) << '\n';
    out << "l1.gamma = " << fmt(cfg.gamma) << '\n';
    out << "l1.a = " << fmt(cfg.filter_a) << '\n';
    out << "l1.theta_max = " << fmt(cfg.theta_max) << '\n';
    out << "l1.eps_proj = " << fmt(cfg.eps_proj) << '\n';
    out << "trajectory.kind = " << to_string(cfg.trajectory) << '\n';
    out << "trajectory.rho = " << fmt(cfg.rho) << '\n';
    out << "trajectory.omega = " << fmt(cfg.omega) << '\n';
    out << "trajectory.x0 = " << fmt(cfg.x0) << '\n';
    out << "trajectory.y0 = " << fmt(cfg.y0) << '\n';
    out << "trajectory.z0 = " << fmt(cfg.z0) << '\n';
    out << "trajectory.a = " << fmt(cfg.sig_a) << '\n';
    out << "trajectory.b = " << fmt(cfg.sig_b) << '\n';
    out << "trajectory.c = " << fmt(cfg.sig_c) << '\n';
    out << "trajectory.t0 = " << fmt(cfg.sig_t0) << '\n';
    out << "trajectory.roll_deg = " << fmt(cfg.step_roll_deg) << '\n';
    out << "trajectory.pitch_deg = " << fmt(cfg.step_pitch_deg) << '\n';
    out << "trajectory.yaw_deg = " << fmt(cfg.step_yaw_deg) << '\n';
    out << "disturbance.constant = " << fmt(cfg.theta_constant) << '\n';
    out << "disturbance.harmonic = " << (cfg.harmonic ? 1 : 0) << '\n';
    out << "disturbance.harmonic_scale = " << fmt(cfg.harmonic_scale) << '\n';
    out << "sim.dt = " << fmt(cfg.dt) << '\n';
    out << "sim.duration = " << fmt(cfg.duration) << '\n';
    out << "init.roll_deg = " << fmt(cfg.roll0_deg) << '\n';
    out << "init.pitch_deg = " << fmt(cfg.pitch0_deg) << '\n';
    out << "init.yaw_deg = " << fmt(cfg.yaw0_deg) << '\n';
    out << "init.ref_roll_deg = " << fmt(cfg.ref_roll0_deg) << '\n';
    out << "init.ref_pitch_deg = " << fmt(cfg.ref_pitch0_deg) << '\n';
    out << "init.ref_yaw_deg = " << fmt(cfg.ref_yaw0_deg) << '\n';
    out << "init.omega = " << fmt(cfg.omega0) << '\n';
    out << "init.ref_omega = " << fmt(cfg.ref_omega0) << '\n';
    out << "init.gate_override = " << (cfg.gate_override ? 1 : 0) << '\n';
    if (cfg.saturation_on)
        out << "saturation.limit = " << fmt(cfg.saturation_limit) << '\n';
    out << "integrator.plant = " << to_string(cfg.plant_integrator) << '\n';
    out << "integrator.reference = " << to_string(cfg.reference_integrator) << '\n';
    out << "metrics.window_frac = " << fmt(cfg.metrics_window_frac) << '\n';
    return out.str();
}

}  // namespace so3l1
