#include "planarquad/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <numbers>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"

#include "planarquad/analysis.hpp"
#include "planarquad/linear_model.hpp"
#include "planarquad/report.hpp"
#include "planarquad/scenario.hpp"
#include "planarquad/sim.hpp"

namespace planarquad {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GlobalFlags {
    std::optional<double> dt;
    std::optional<double> t_end;
    bool seedless = false; // nothing is random; accepted for script compatibility
    std::string out_dir;
};

json state_json(const State& s)
{
    json j;
    for (StateChannel c : kAllChannels) j[std::string(channel_name(c))] = s[c];
    return j;
}

json peak_json(const Trajectory& traj)
{
    json j;
    for (StateChannel c : kAllChannels) {
        double peak = 0.0;
        for (const State& s : traj.states) peak = std::max(peak, std::abs(s[c]));
        j[std::string(channel_name(c))] = peak;
    }
    return j;
}

void write_file(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write '" + path.string() + "'");
    f << text;
}

void write_csv_file(const fs::path& path, const Trajectory& traj)
{
    std::ostringstream os;
    write_csv(os, traj);
    write_file(path, os.str());
}

std::string fmt_g(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Step metrics for each closed-loop axis whose setpoint differs from the start.
json closed_loop_metrics(const Trajectory& traj, const ClosedLoopInput& cl, const State& initial)
{
    json j = json::object();
    if (cl.setpoint.x_des != initial.x) j["x"] = step_report(traj, StateChannel::x, cl.setpoint.x_des);
    if (cl.setpoint.y_des != initial.y) j["y"] = step_report(traj, StateChannel::y, cl.setpoint.y_des);
    return j;
}

int cmd_simulate(const GlobalFlags& g, const std::string& ref, std::ostream& out, std::ostream& err)
{
    Scenario sc = load_scenario(resolve_scenario_path(ref));
    if (g.dt) sc.sim.dt = *g.dt;
    if (g.t_end) sc.sim.t_end = *g.t_end;
    sc.sim.validate();
    const fs::path dir = g.out_dir.empty() ? fs::path(".") : fs::path(g.out_dir);

    int code = kExitOk;
    Trajectory traj;
    std::optional<double> failed_at;
    try {
        traj = integrate(sc.sim, sc.signal, sc.params);
    } catch (const DivergenceError& e) {
        traj = e.partial();
        failed_at = e.failure_time();
        err << "simulation diverged at t = " << e.failure_time() << " s: " << e.what() << '\n';
        code = kExitDiverged;
    }

    if (sc.wants(OutputKind::csv)) {
        write_csv_file(dir / (sc.name + ".csv"), traj);
        out << "wrote " << (dir / (sc.name + ".csv")).string() << '\n';
    }
    if (sc.wants(OutputKind::metrics)) {
        json j;
        j["scenario"] = sc.name;
        j["plant"] = std::string(plant_name(sc.sim.plant));
        j["samples"] = traj.size();
        j["diverged_at"] = failed_at ? json(*failed_at) : json(nullptr);
        if (!traj.empty()) {
            j["final_state"] = state_json(traj.states.back());
            j["max_abs"] = peak_json(traj);
        }
        if (const auto* cl = std::get_if<ClosedLoopInput>(&sc.signal); cl && !traj.empty()) {
            j["step"] = closed_loop_metrics(traj, *cl, sc.sim.initial_state);
        }
        const fs::path p = dir / (sc.name + "_metrics.json");
        write_file(p, j.dump(2) + "\n");
        out << "wrote " << p.string() << '\n';
    }
    if (sc.wants(OutputKind::comparison)) {
        ComparisonScenario cs{sc.signal, sc.sim.dt, sc.sim.t_end, sc.sim.initial_state, sc.divergence_threshold};
        const fs::path p = dir / (sc.name + "_comparison.json");
        write_file(p, comparison_to_json(compare_models(cs, sc.params)).dump(2) + "\n");
        out << "wrote " << p.string() << '\n';
    }
    return code;
}

int cmd_tf(bool symbolic, std::ostream& out)
{
    const QuadParams params;
    if (symbolic) {
        out << format_symbolic_tf(symbolic_tf(params));
    } else {
        out << format_tf_matrix(tf_from_ss(linearize(params)));
    }
    return kExitOk;
}

int cmd_equilibrium(std::ostream& out)
{
    const Equilibrium eq = equilibrium(QuadParams{});
    const bool origin = eq.state == State{};
    out << "u1 = " << fmt_g(eq.input.u1) << " N, u2 = " << fmt_g(eq.input.u2)
        << ", state = " << (origin ? std::string("origin") : state_json(eq.state).dump()) << '\n';
    return kExitOk;
}

int cmd_step(const GlobalFlags& g, const std::string& plant_s, const std::string& channel_s,
             const std::string& preset_s, std::ostream& out, std::ostream& err)
{
    const QuadParams params;
    const Plant plant = parse_plant(plant_s);

    json j;
    j["plant"] = plant_s;
    j["channel"] = channel_s;

    if (channel_s == "u1" || channel_s == "u2") {
        const InputChannel ch = parse_input_channel(channel_s);
        const double t_end = g.t_end.value_or(2.0);
        j["t_end"] = t_end;
        if (ch == InputChannel::u2) j["angle_reaches_pi_s"] = linear_failure_time(params, std::numbers::pi);
        Trajectory traj;
        int code = kExitOk;
        try {
            traj = open_loop_step(plant, ch, params, g.dt.value_or(kDefaultDt), t_end);
            j["diverged_at"] = nullptr;
        } catch (const DivergenceError& e) {
            traj = e.partial();
            j["diverged_at"] = e.failure_time();
            err << "open-loop run diverged at t = " << e.failure_time() << " s\n";
            code = kExitDiverged;
        }
        j["final_state"] = state_json(traj.states.back());
        j["max_abs"] = peak_json(traj);
        if (!g.out_dir.empty()) write_csv_file(fs::path(g.out_dir) / ("step_" + plant_s + "_" + channel_s + ".csv"), traj);
        out << j.dump(2) << '\n';
        return code;
    }

    if (channel_s != "closed-x" && channel_s != "closed-y") {
        throw ConfigError("unknown step channel '" + channel_s + "' (u1, u2, closed-x, closed-y)");
    }
    const bool x_axis = channel_s == "closed-x";
    ClosedLoopInput cl;
    cl.gains = PdGains::preset(parse_preset(preset_s));
    cl.setpoint = x_axis ? Setpoint{1.0, 0.0} : Setpoint{0.0, 1.0};
    SimConfig cfg;
    cfg.plant = plant;
    cfg.dt = g.dt.value_or(kDefaultDt);
    cfg.t_end = g.t_end.value_or(5.0);
    j["gains"] = preset_s;
    j["t_end"] = cfg.t_end;

    Trajectory traj;
    try {
        traj = integrate(cfg, cl, params);
    } catch (const DivergenceError& e) {
        err << "closed-loop run diverged at t = " << e.failure_time() << " s\n";
        if (!g.out_dir.empty()) {
            write_csv_file(fs::path(g.out_dir) / ("step_" + plant_s + "_" + channel_s + ".csv"), e.partial());
        }
        return kExitDiverged;
    }
    const StateChannel axis = x_axis ? StateChannel::x : StateChannel::y;
    j.update(step_report(traj, axis, 1.0));
    if (!g.out_dir.empty()) write_csv_file(fs::path(g.out_dir) / ("step_" + plant_s + "_" + channel_s + ".csv"), traj);
    out << j.dump(2) << '\n';
    return kExitOk;
}

int cmd_compare(const GlobalFlags& g, const std::string& ref, std::ostream& out)
{
    Scenario sc = load_scenario(resolve_scenario_path(ref));
    ComparisonScenario cs{sc.signal, g.dt.value_or(sc.sim.dt), g.t_end.value_or(sc.sim.t_end),
                          sc.sim.initial_state, sc.divergence_threshold};
    json j = comparison_to_json(compare_models(cs, sc.params));
    j["scenario"] = sc.name;
    out << j.dump(2) << '\n';
    if (!g.out_dir.empty()) write_file(fs::path(g.out_dir) / (sc.name + "_comparison.json"), j.dump(2) + "\n");
    return kExitOk;
}

int cmd_probe(const GlobalFlags& g, const std::vector<double>& phi0s, const std::string& plant_s,
              const std::string& preset_s, double tol, std::ostream& out)
{
    const QuadParams params;
    ProbeRequest base;
    base.plant = parse_plant(plant_s);
    base.gains = PdGains::preset(parse_preset(preset_s));
    base.t_end = g.t_end.value_or(kDefaultProbeHorizon);
    base.tol = tol;
    base.dt = g.dt.value_or(kDefaultDt);

    // Each probe is an independent pure simulation.
    std::vector<std::future<StabilityVerdict>> jobs;
    for (double phi0 : phi0s) {
        ProbeRequest r = base;
        r.initial.phi = phi0;
        jobs.push_back(std::async(std::launch::async, [r, params] { return stability_probe(r, params); }));
    }

    json runs = json::array();
    bool any_diverged = false;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const StabilityVerdict v = jobs[i].get();
        any_diverged = any_diverged || v.diverged;
        json item = verdict_to_json(v);
        item["phi0"] = phi0s[i];
        runs.push_back(item);
    }
    json j;
    j["plant"] = plant_s;
    j["gains"] = preset_s;
    j["horizon_s"] = base.t_end;
    j["tolerance"] = tol;
    j["runs"] = runs;
    out << j.dump(2) << '\n';
    if (!g.out_dir.empty()) write_file(fs::path(g.out_dir) / "probe.json", j.dump(2) + "\n");
    return any_diverged ? kExitDiverged : kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Planar quadrotor simulation and analysis", "planarquad"};
    app.require_subcommand(1);

    GlobalFlags g;
    double dt_value = kDefaultDt, t_end_value = 0.0;
    auto* dt_opt = app.add_option("--dt", dt_value, "integration step in seconds (default 1e-4)");
    auto* t_end_opt = app.add_option("--t-end", t_end_value, "simulation end time in seconds");
    app.add_flag("--seedless", g.seedless, "accepted and ignored; runs are deterministic");
    app.add_option("--out", g.out_dir, "output directory");

    std::string scenario_ref;
    auto* simulate = app.add_subcommand("simulate", "run a scenario file and write its outputs");
    simulate->add_option("--scenario", scenario_ref, "scenario file or name")->required();

    bool symbolic = false;
    auto* tf = app.add_subcommand("tf", "print the transfer-function matrix");
    tf->add_flag("--symbolic", symbolic, "show entries in terms of m, g and J");

    auto* eq = app.add_subcommand("equilibrium", "print the hover equilibrium");

    std::string plant = "linear", channel, preset = "tuned";
    auto* step = app.add_subcommand("step", "canonical open- or closed-loop unit step");
    step->add_option("--plant", plant, "linear or nonlinear")->capture_default_str();
    step->add_option("--channel", channel, "u1, u2, closed-x or closed-y")->required();
    step->add_option("--gains", preset, "gain preset: tuned, reported, reported_swapped")->capture_default_str();

    auto* compare = app.add_subcommand("compare", "linear vs nonlinear comparison of a scenario");
    compare->add_option("--scenario", scenario_ref, "scenario file or name")->required();

    std::vector<double> phi0s;
    std::string probe_plant = "nonlinear";
    double tol = kDefaultConvergenceTol;
    auto* probe = app.add_subcommand("probe", "closed-loop recovery from tilted starts");
    probe->add_option("--phi0", phi0s, "comma-separated initial angles in rad")->required()->delimiter(',');
    probe->add_option("--plant", probe_plant, "linear or nonlinear")->capture_default_str();
    probe->add_option("--gains", preset, "gain preset")->capture_default_str();
    probe->add_option("--tol", tol, "convergence tolerance on the state error norm")->capture_default_str();

    for (auto* sub : {simulate, tf, eq, step, compare, probe}) sub->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }
    if (*dt_opt) g.dt = dt_value;
    if (*t_end_opt) g.t_end = t_end_value;

    try {
        if (*simulate) return cmd_simulate(g, scenario_ref, out, err);
        if (*tf) return cmd_tf(symbolic, out);
        if (*eq) return cmd_equilibrium(out);
        if (*step) return cmd_step(g, plant, channel, preset, out, err);
        if (*compare) return cmd_compare(g, scenario_ref, out);
        if (*probe) return cmd_probe(g, phi0s, probe_plant, preset, tol, out);
    } catch (const DivergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDiverged;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}

} // namespace planarquad
