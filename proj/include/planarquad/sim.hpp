#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "planarquad/control.hpp"
#include "planarquad/dynamics.hpp"
#include "planarquad/errors.hpp"

namespace planarquad {

enum class Plant { linear, nonlinear };
enum class InputChannel { u1, u2 };

std::string_view plant_name(Plant plant);
Plant parse_plant(std::string_view name);
std::string_view input_channel_name(InputChannel channel);
InputChannel parse_input_channel(std::string_view name);

/// Constant inputs switched on at t = 0. hover_offset adds m g to u1.
struct StepInput {
    double u1_amp = 0.0;
    double u2_amp = 0.0;
    bool hover_offset = false;

    bool operator==(const StepInput&) const = default;
};

/// offset + amplitude * sin(2 pi f t) on one channel, zero on the other.
struct SinusoidInput {
    InputChannel channel = InputChannel::u1;
    double amplitude = 1.0;
    double frequency_hz = 1.0;
    double offset = 0.0;

    bool operator==(const SinusoidInput&) const = default;
};

struct ConstantInput {
    double u1 = 0.0;
    double u2 = 0.0;

    bool operator==(const ConstantInput&) const = default;
};

/// Cascaded PD feedback, evaluated once per step and held across the step.
struct ClosedLoopInput {
    PdGains gains;
    Setpoint setpoint;
    ControllerOptions options;

    bool operator==(const ClosedLoopInput&) const = default;
};

using InputSignal = std::variant<StepInput, SinusoidInput, ConstantInput, ClosedLoopInput>;

/// Throws ConfigError on a non-positive sinusoid frequency or invalid gains/limits.
void validate_signal(const InputSignal& signal);

inline constexpr double kDefaultDt = 1e-4;
inline constexpr double kMaxSamples = 1e8;
inline constexpr double kDivergenceNorm = 1e9;

struct SimConfig {
    Plant plant = Plant::nonlinear;
    double dt = kDefaultDt;
    double t_end = 2.0;
    State initial_state;

    /// Throws ConfigError unless 0 < dt <= t_end, t_end / dt <= 1e8 and the
    /// initial state is finite.
    void validate() const;

    /// ceil(t_end / dt) + 1, with ratios within 1e-9 of an integer rounded.
    std::size_t sample_count() const;

    bool operator==(const SimConfig&) const = default;
};

/// Uniformly sampled run. t, states, inputs and phi_des always share a length;
/// phi_des is 0 for open-loop runs.
struct Trajectory {
    std::vector<double> t;
    std::vector<State> states;
    std::vector<Input> inputs;
    std::vector<double> phi_des;

    std::size_t size() const { return t.size(); }
    bool empty() const { return t.empty(); }

    /// Samples of one state slot.
    std::vector<double> channel(StateChannel channel) const;

    bool operator==(const Trajectory&) const = default;
};

/// Raised when the state stops being finite or its norm passes 1e9. Carries
/// the samples recorded before the failure.
class DivergenceError : public Error {
public:
    DivergenceError(Trajectory partial, double failure_time);

    const Trajectory& partial() const { return partial_; }
    double failure_time() const { return failure_time_; }

private:
    Trajectory partial_;
    double failure_time_;
};

/// Classical fixed-step RK4 on the chosen plant. Open-loop signals are
/// evaluated at each stage time; closed-loop control is computed at the start
/// of each step and held (zero-order hold). The linear plant is driven with
/// the input vector (u1, u2, g).
Trajectory integrate(const SimConfig& config, const InputSignal& signal, const QuadParams& params);

/// Unit step on one channel from hover position with gravity acting. A u2
/// step holds u1 at m g so the horizontal dynamics are excited.
Trajectory open_loop_step(Plant plant, InputChannel channel, const QuadParams& params,
                          double dt = kDefaultDt, double t_end = 2.0);

/// First time |a[channel] - b[channel]| > threshold, or nullopt. Throws
/// GridMismatchError unless both trajectories share the same time samples.
std::optional<double> divergence_time(const Trajectory& a, const Trajectory& b, StateChannel channel,
                                      double threshold);

} // namespace planarquad
