#pragma once

#include <optional>
#include <string_view>

#include "planarquad/dynamics.hpp"

namespace planarquad {

/// Named gain sets for the three PD loops.
///
/// tuned            - default; thrust loop (7.0, 1.42) as reported, angle loops
///                    retuned so the x axis meets the 16 % / 5 rad/s band on both plants
/// reported         - reported values, (0.04, 0.008) on the position-to-angle loop
///                    and (2.5, 0.56) on the moment loop
/// reported_swapped - reported values with the two angle-loop pairs exchanged
enum class GainPreset { tuned, reported, reported_swapped };

std::string_view preset_name(GainPreset preset);
GainPreset parse_preset(std::string_view name);

struct PdGains {
    double kp_y = 7.0;    ///< thrust loop, N per m of altitude error
    double kd_y = 1.42;   ///< thrust loop, N per m/s of climb rate
    double kp_x = 2.5;    ///< desired angle, rad per m of horizontal error
    double kd_x = 0.75;   ///< desired angle, rad per m/s of horizontal speed
    double kp_phi = 0.1;  ///< moment loop, N m per rad
    double kd_phi = 0.01; ///< moment loop, N m per rad/s

    static PdGains preset(GainPreset preset);

    /// Throws ConfigError when any gain is not finite.
    void validate() const;

    bool operator==(const PdGains&) const = default;
};

struct Setpoint {
    double x_des = 0.0;
    double y_des = 0.0;

    bool operator==(const Setpoint&) const = default;
};

/// Sign applied to the position-to-angle loop. `negated` is required for
/// stability because x'' = -u1 sin(phi) / m; `literal` uses the unsigned law.
enum class OuterLoopSign { negated, literal };

/// Reference angular rate in the moment loop. `zero` holds it at 0;
/// `model_derivative` differentiates phi_des along the nonlinear model.
enum class AngleRateReference { zero, model_derivative };

struct Bounds {
    double lo = 0.0;
    double hi = 0.0;

    bool operator==(const Bounds&) const = default;
};

/// Optional per-channel saturation. Absent bounds leave a channel untouched.
struct InputLimits {
    std::optional<Bounds> u1;
    std::optional<Bounds> u2;

    /// Throws ConfigError when a present bound has lo > hi or is not finite.
    void validate() const;

    bool operator==(const InputLimits&) const = default;
};

struct ControllerOptions {
    OuterLoopSign outer_sign = OuterLoopSign::negated;
    AngleRateReference angle_rate = AngleRateReference::zero;
    InputLimits limits;

    bool operator==(const ControllerOptions&) const = default;
};

struct ControlDiagnostics {
    double phi_des = 0.0;
    double phi_des_dot = 0.0;
    Input u_raw; ///< before clamping
};

struct ControlOutput {
    Input input;
    ControlDiagnostics diagnostics;
};

/// Three cascaded PD loops:
///   u1      = m g + kp_y (y_des - y) + kd_y (0 - vy)
///   phi_des = sign * (kp_x (x_des - x) + kd_x (0 - vx)),  sign = -1 by default
///   u2      = kp_phi (phi_des - phi) + kd_phi (phi_des_dot - omega)
ControlOutput control_law(const State& state, const Setpoint& setpoint, const PdGains& gains,
                          const QuadParams& params, const ControllerOptions& options = {});

/// Channelwise clamp; identity when limits are absent.
Input clamp_policy(const Input& input, const InputLimits& limits);

} // namespace planarquad
