#include "planarquad/control.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "planarquad/errors.hpp"

namespace planarquad {

std::string_view preset_name(GainPreset preset)
{
    switch (preset) {
    case GainPreset::tuned: return "tuned";
    case GainPreset::reported: return "reported";
    case GainPreset::reported_swapped: return "reported_swapped";
    }
    return "?";
}

GainPreset parse_preset(std::string_view name)
{
    for (GainPreset p : {GainPreset::tuned, GainPreset::reported, GainPreset::reported_swapped}) {
        if (preset_name(p) == name) return p;
    }
    throw ConfigError("unknown gain preset '" + std::string(name) + "' (tuned, reported, reported_swapped)");
}

PdGains PdGains::preset(GainPreset preset)
{
    switch (preset) {
    case GainPreset::tuned: return PdGains{};
    case GainPreset::reported: return PdGains{7.0, 1.42, 0.04, 0.008, 2.5, 0.56};
    case GainPreset::reported_swapped: return PdGains{7.0, 1.42, 2.5, 0.56, 0.04, 0.008};
    }
    return PdGains{};
}

void PdGains::validate() const
{
    for (double k : {kp_y, kd_y, kp_x, kd_x, kp_phi, kd_phi}) {
        if (!std::isfinite(k)) throw ConfigError("controller gains must be finite");
    }
}

void InputLimits::validate() const
{
    for (const auto* b : {&u1, &u2}) {
        if (!b->has_value()) continue;
        const Bounds& v = **b;
        if (!std::isfinite(v.lo) || !std::isfinite(v.hi)) throw ConfigError("input limits must be finite");
        if (v.lo > v.hi) throw ConfigError("input limit lower bound exceeds upper bound");
    }
}

Input clamp_policy(const Input& input, const InputLimits& limits)
{
    Input out = input;
    if (limits.u1) out.u1 = std::clamp(out.u1, limits.u1->lo, limits.u1->hi);
    if (limits.u2) out.u2 = std::clamp(out.u2, limits.u2->lo, limits.u2->hi);
    return out;
}

ControlOutput control_law(const State& state, const Setpoint& setpoint, const PdGains& gains,
                          const QuadParams& params, const ControllerOptions& options)
{
    const double sign = options.outer_sign == OuterLoopSign::negated ? -1.0 : 1.0;

    const double u1 = params.m * params.g + gains.kp_y * (setpoint.y_des - state.y) + gains.kd_y * (0.0 - state.vy);
    const double phi_des = sign * (gains.kp_x * (setpoint.x_des - state.x) + gains.kd_x * (0.0 - state.vx));

    double phi_des_dot = 0.0;
    if (options.angle_rate == AngleRateReference::model_derivative) {
        const double x_accel = -u1 * std::sin(state.phi) / params.m;
        phi_des_dot = sign * (gains.kp_x * (0.0 - state.vx) + gains.kd_x * (0.0 - x_accel));
    }

    const double u2 = gains.kp_phi * (phi_des - state.phi) + gains.kd_phi * (phi_des_dot - state.omega);

    ControlOutput out;
    out.diagnostics.phi_des = phi_des;
    out.diagnostics.phi_des_dot = phi_des_dot;
    out.diagnostics.u_raw = Input{u1, u2};
    out.input = clamp_policy(out.diagnostics.u_raw, options.limits);
    return out;
}

} // namespace planarquad
