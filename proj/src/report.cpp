#include "planarquad/report.hpp"

#include <cstdio>

namespace planarquad {

namespace {

nlohmann::json opt(const std::optional<double>& v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

void put_number(std::ostream& os, double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    os << buf;
}

} // namespace

void write_csv(std::ostream& os, const Trajectory& traj)
{
    os << kCsvHeader << '\n';
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const State& s = traj.states[i];
        const Input& u = traj.inputs[i];
        for (double v : {traj.t[i], s.x, s.y, s.phi, s.vx, s.vy, s.omega, u.u1, u.u2}) {
            put_number(os, v);
            os << ',';
        }
        put_number(os, traj.phi_des[i]);
        os << '\n';
    }
}

nlohmann::json metrics_to_json(const StepMetrics& m)
{
    return {
        {"overshoot_pct", opt(m.overshoot_pct)},
        {"rise_time_s", opt(m.rise_time_s)},
        {"settling_time_s", opt(m.settling_time_s)},
        {"steady_state_error", opt(m.steady_state_error)},
        {"rise_convention", std::string(rise_convention_name(m.convention))},
        {"settling_band", kSettlingBand},
        {"natural_frequency_rad_s", opt(equivalent_natural_frequency(m))},
    };
}

nlohmann::json step_report(const Trajectory& traj, StateChannel channel, double target)
{
    nlohmann::json j = metrics_to_json(step_metrics(traj, channel, target, RiseConvention::ten_ninety));
    j["rise_time_0_100_s"] = opt(step_metrics(traj, channel, target, RiseConvention::zero_hundred).rise_time_s);
    return j;
}

nlohmann::json comparison_to_json(const ComparisonReport& r)
{
    nlohmann::json j;
    j["samples_compared"] = r.samples_compared;
    j["divergence_threshold"] = r.divergence_threshold;
    j["linear_diverged_at"] = opt(r.linear_diverged_at);
    j["nonlinear_diverged_at"] = opt(r.nonlinear_diverged_at);
    for (const auto& d : r.deviations) {
        const std::string ch(channel_name(d.channel));
        j["max_dev_" + ch] = d.max_abs_deviation;
        j["divergence_time_" + ch] = opt(d.divergence_time);
    }
    auto add = [&](const std::string& prefix, const std::optional<StepMetrics>& m) {
        if (!m) return;
        const nlohmann::json flat = metrics_to_json(*m);
        for (const auto& [key, value] : flat.items()) j[prefix + "_" + key] = value;
    };
    add("linear_x", r.linear_x);
    add("nonlinear_x", r.nonlinear_x);
    add("linear_y", r.linear_y);
    add("nonlinear_y", r.nonlinear_y);
    return j;
}

nlohmann::json verdict_to_json(const StabilityVerdict& v)
{
    return {
        {"converged", v.converged},
        {"final_state_norm", v.final_state_norm},
        {"time_to_converge_s", opt(v.time_to_converge)},
        {"diverged", v.diverged},
        {"message", v.message},
    };
}

} // namespace planarquad
