#include "planarquad/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace planarquad {

std::string_view rise_convention_name(RiseConvention convention)
{
    return convention == RiseConvention::ten_ninety ? "10-90" : "0-100";
}

namespace {

// First time the normalized progress p(t) = (v - v0) / (target - v0) reaches
// `level`, interpolated between samples.
std::optional<double> first_crossing(const std::vector<double>& t, const std::vector<double>& p, double level)
{
    if (p[0] >= level) return t[0];
    for (std::size_t i = 1; i < p.size(); ++i) {
        if (p[i] >= level) {
            const double frac = (level - p[i - 1]) / (p[i] - p[i - 1]);
            return t[i - 1] + frac * (t[i] - t[i - 1]);
        }
    }
    return std::nullopt;
}

} // namespace

StepMetrics step_metrics(const std::vector<double>& t, const std::vector<double>& v, double target,
                         RiseConvention convention)
{
    if (t.empty() || v.size() != t.size()) throw ConfigError("step_metrics needs a non-empty trace");
    const double start = v.front();
    const double step = target - start;
    if (step == 0.0) throw ConfigError("step target equals the initial value");

    std::vector<double> progress(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) progress[i] = (v[i] - start) / step;

    StepMetrics m;
    m.convention = convention;

    const double peak = *std::max_element(progress.begin(), progress.end());
    m.overshoot_pct = std::max(0.0, (peak - 1.0) * 100.0);

    if (convention == RiseConvention::ten_ninety) {
        const auto t10 = first_crossing(t, progress, 0.1);
        const auto t90 = first_crossing(t, progress, 0.9);
        if (t10 && t90) m.rise_time_s = *t90 - *t10;
    } else {
        if (const auto t100 = first_crossing(t, progress, 1.0)) m.rise_time_s = *t100 - t.front();
    }

    // Last sample outside the band; settling is where the trace re-enters it.
    std::optional<std::size_t> last_out;
    for (std::size_t i = progress.size(); i-- > 0;) {
        if (std::abs(progress[i] - 1.0) > kSettlingBand) {
            last_out = i;
            break;
        }
    }
    if (!last_out) {
        m.settling_time_s = 0.0;
    } else if (*last_out + 1 < progress.size()) {
        const std::size_t i = *last_out;
        const double e0 = std::abs(progress[i] - 1.0);
        const double e1 = std::abs(progress[i + 1] - 1.0);
        const double frac = e0 == e1 ? 1.0 : (e0 - kSettlingBand) / (e0 - e1);
        m.settling_time_s = t[i] + std::clamp(frac, 0.0, 1.0) * (t[i + 1] - t[i]) - t.front();
    }

    m.steady_state_error = std::abs(progress.back() - 1.0);
    return m;
}

StepMetrics step_metrics(const Trajectory& traj, StateChannel channel, double target, RiseConvention convention)
{
    if (traj.empty()) throw ConfigError("step_metrics needs a non-empty trajectory");
    return step_metrics(traj.t, traj.channel(channel), target, convention);
}

std::optional<double> equivalent_natural_frequency(const StepMetrics& metrics)
{
    if (!metrics.overshoot_pct || !metrics.rise_time_s || metrics.convention != RiseConvention::ten_ninety) {
        return std::nullopt;
    }
    if (*metrics.rise_time_s <= 0.0) return std::nullopt;
    double zeta = 1.0;
    if (*metrics.overshoot_pct > 0.0) {
        const double l = std::log(*metrics.overshoot_pct / 100.0);
        zeta = -l / std::sqrt(std::numbers::pi * std::numbers::pi + l * l);
    }
    return (1.0 - 0.4167 * zeta + 2.917 * zeta * zeta) / *metrics.rise_time_s;
}

double linear_failure_time(const QuadParams& params, double angle_threshold)
{
    if (!(angle_threshold >= 0.0)) throw ConfigError("angle threshold must be non-negative");
    params.validate();
    return std::sqrt(2.0 * params.J * angle_threshold);
}

double state_error_norm(const State& s, const Setpoint& sp)
{
    const double ex = s.x - sp.x_des;
    const double ey = s.y - sp.y_des;
    return std::sqrt(ex * ex + ey * ey + s.phi * s.phi + s.vx * s.vx + s.vy * s.vy + s.omega * s.omega);
}

StabilityVerdict stability_probe(const ProbeRequest& request, const QuadParams& params)
{
    if (!(request.t_end > 0.0)) throw ConfigError("probe horizon must be positive");
    if (!(request.tol > 0.0)) throw ConfigError("convergence tolerance must be positive");

    SimConfig config;
    config.plant = request.plant;
    config.dt = request.dt;
    config.t_end = request.t_end;
    config.initial_state = request.initial;
    const ClosedLoopInput law{request.gains, request.setpoint, request.options};

    StabilityVerdict verdict;
    Trajectory traj;
    try {
        traj = integrate(config, law, params);
    } catch (const DivergenceError& e) {
        verdict.diverged = true;
        verdict.converged = false;
        verdict.final_state_norm = e.partial().empty()
                                       ? std::numeric_limits<double>::infinity()
                                       : state_error_norm(e.partial().states.back(), request.setpoint);
        verdict.message = e.what();
        return verdict;
    }

    verdict.final_state_norm = state_error_norm(traj.states.back(), request.setpoint);
    verdict.converged = verdict.final_state_norm <= request.tol;
    if (verdict.converged) {
        std::size_t first_inside = traj.size() - 1;
        while (first_inside > 0 && state_error_norm(traj.states[first_inside - 1], request.setpoint) <= request.tol) {
            --first_inside;
        }
        verdict.time_to_converge = traj.t[first_inside] - traj.t.front();
        verdict.message = "converged";
    } else {
        verdict.message = "error norm above tolerance at t_end";
    }
    return verdict;
}

const ChannelDeviation& ComparisonReport::deviation(StateChannel channel) const
{
    for (const auto& d : deviations) {
        if (d.channel == channel) return d;
    }
    throw ConfigError("channel missing from comparison report");
}

std::vector<ChannelDeviation> compare_trajectories(const Trajectory& a, const Trajectory& b, double threshold)
{
    if (a.t != b.t) throw GridMismatchError("trajectories do not share a time grid");
    std::vector<ChannelDeviation> out;
    for (StateChannel c : kAllChannels) {
        ChannelDeviation d;
        d.channel = c;
        for (std::size_t i = 0; i < a.size(); ++i) {
            d.max_abs_deviation = std::max(d.max_abs_deviation, std::abs(a.states[i][c] - b.states[i][c]));
        }
        d.divergence_time = divergence_time(a, b, c, threshold);
        out.push_back(d);
    }
    return out;
}

namespace {

struct RunResult {
    Trajectory traj;
    std::optional<double> diverged_at;
};

RunResult run_tolerant(const SimConfig& config, const InputSignal& signal, const QuadParams& params)
{
    try {
        return {integrate(config, signal, params), std::nullopt};
    } catch (const DivergenceError& e) {
        return {e.partial(), e.failure_time()};
    }
}

Trajectory prefix(const Trajectory& t, std::size_t n)
{
    Trajectory out;
    out.t.assign(t.t.begin(), t.t.begin() + static_cast<std::ptrdiff_t>(n));
    out.states.assign(t.states.begin(), t.states.begin() + static_cast<std::ptrdiff_t>(n));
    out.inputs.assign(t.inputs.begin(), t.inputs.begin() + static_cast<std::ptrdiff_t>(n));
    out.phi_des.assign(t.phi_des.begin(), t.phi_des.begin() + static_cast<std::ptrdiff_t>(n));
    return out;
}

} // namespace

ComparisonReport compare_models(const ComparisonScenario& scenario, const QuadParams& params)
{
    SimConfig config;
    config.dt = scenario.dt;
    config.t_end = scenario.t_end;
    config.initial_state = scenario.initial;

    config.plant = Plant::linear;
    const RunResult lin = run_tolerant(config, scenario.signal, params);
    config.plant = Plant::nonlinear;
    const RunResult non = run_tolerant(config, scenario.signal, params);

    const std::size_t n = std::min(lin.traj.size(), non.traj.size());
    const Trajectory a = prefix(lin.traj, n);
    const Trajectory b = prefix(non.traj, n);

    ComparisonReport report;
    report.divergence_threshold = scenario.divergence_threshold;
    report.samples_compared = n;
    report.linear_diverged_at = lin.diverged_at;
    report.nonlinear_diverged_at = non.diverged_at;
    report.deviations = compare_trajectories(a, b, scenario.divergence_threshold);

    if (const auto* cl = std::get_if<ClosedLoopInput>(&scenario.signal); cl && n > 0) {
        if (cl->setpoint.x_des != scenario.initial.x) {
            report.linear_x = step_metrics(a, StateChannel::x, cl->setpoint.x_des);
            report.nonlinear_x = step_metrics(b, StateChannel::x, cl->setpoint.x_des);
        }
        if (cl->setpoint.y_des != scenario.initial.y) {
            report.linear_y = step_metrics(a, StateChannel::y, cl->setpoint.y_des);
            report.nonlinear_y = step_metrics(b, StateChannel::y, cl->setpoint.y_des);
        }
    }
    return report;
}

} // namespace planarquad
