#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "planarquad/control.hpp"
#include "planarquad/sim.hpp"

namespace planarquad {

/// How rise time is measured. ten_ninety: interval between the first 10 % and
/// first 90 % crossings. zero_hundred: time from the start to the first 100 %
/// crossing.
enum class RiseConvention { ten_ninety, zero_hundred };

std::string_view rise_convention_name(RiseConvention convention);

inline constexpr double kSettlingBand = 0.02;

/// Step-response figures. Fields are nullopt when the trace never crosses the
/// level they depend on.
struct StepMetrics {
    std::optional<double> overshoot_pct;      ///< peak excess over target, % of step, >= 0
    std::optional<double> rise_time_s;
    std::optional<double> settling_time_s;    ///< enters the 2 % band for good
    std::optional<double> steady_state_error; ///< terminal |error| / |step|
    RiseConvention convention = RiseConvention::ten_ninety;
};

/// Metrics of one channel of a trajectory against a target, with crossing
/// times interpolated linearly between samples. Times are measured from the
/// first sample. Throws ConfigError on an empty trajectory or a target equal
/// to the initial value.
StepMetrics step_metrics(const Trajectory& traj, StateChannel channel, double target,
                         RiseConvention convention = RiseConvention::ten_ninety);

/// Same, for a bare sample sequence on time grid t.
StepMetrics step_metrics(const std::vector<double>& t, const std::vector<double>& v, double target,
                         RiseConvention convention = RiseConvention::ten_ninety);

/// Natural frequency of the second-order system with the same overshoot and
/// 10-90 % rise time: zeta from the overshoot, then
/// w_n = (1 - 0.4167 zeta + 2.917 zeta^2) / t_r.
std::optional<double> equivalent_natural_frequency(const StepMetrics& metrics);

/// Time for phi = t^2 / (2 J), the response to a unit moment, to reach the
/// threshold: sqrt(2 J threshold). Throws ConfigError on a negative threshold.
double linear_failure_time(const QuadParams& params, double angle_threshold);

struct StabilityVerdict {
    bool converged = false;
    double final_state_norm = 0.0;
    std::optional<double> time_to_converge; ///< start of the final stretch within tol
    bool diverged = false;
    std::string message;
};

inline constexpr double kDefaultConvergenceTol = 0.01;
inline constexpr double kDefaultProbeHorizon = 5.0;

/// Norm of (x - x_des, y - y_des, phi, vx, vy, omega).
double state_error_norm(const State& state, const Setpoint& setpoint);

struct ProbeRequest {
    Plant plant = Plant::nonlinear;
    PdGains gains;
    ControllerOptions options;
    State initial;
    Setpoint setpoint;
    double t_end = kDefaultProbeHorizon;
    double tol = kDefaultConvergenceTol;
    double dt = kDefaultDt;
};

/// Closed-loop run from `initial`. converged iff the final error norm is <= tol.
/// A divergent run is reported as converged = false rather than thrown.
StabilityVerdict stability_probe(const ProbeRequest& request, const QuadParams& params);

/// One run configuration simulated on both plants.
struct ComparisonScenario {
    InputSignal signal;
    double dt = kDefaultDt;
    double t_end = 2.0;
    State initial;
    double divergence_threshold = 0.1;
};

struct ChannelDeviation {
    StateChannel channel = StateChannel::x;
    double max_abs_deviation = 0.0;
    std::optional<double> divergence_time;
};

struct ComparisonReport {
    std::vector<ChannelDeviation> deviations; ///< all six channels
    double divergence_threshold = 0.1;
    std::size_t samples_compared = 0;
    std::optional<double> linear_diverged_at;
    std::optional<double> nonlinear_diverged_at;
    /// Step metrics, present for closed-loop runs whose setpoint moves the channel.
    std::optional<StepMetrics> linear_x;
    std::optional<StepMetrics> nonlinear_x;
    std::optional<StepMetrics> linear_y;
    std::optional<StepMetrics> nonlinear_y;

    const ChannelDeviation& deviation(StateChannel channel) const;
};

/// Per-channel deviation of two runs on the same grid. Throws GridMismatchError otherwise.
std::vector<ChannelDeviation> compare_trajectories(const Trajectory& a, const Trajectory& b, double threshold);

/// Runs the scenario on the linear and nonlinear plants and compares them over
/// their common samples (a run that diverges contributes its partial).
ComparisonReport compare_models(const ComparisonScenario& scenario, const QuadParams& params);

} // namespace planarquad
