#include "planarquad/sim.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "planarquad/linear_model.hpp"

namespace planarquad {

std::string_view plant_name(Plant plant)
{
    return plant == Plant::linear ? "linear" : "nonlinear";
}

Plant parse_plant(std::string_view name)
{
    if (name == "linear") return Plant::linear;
    if (name == "nonlinear") return Plant::nonlinear;
    throw ConfigError("unknown plant '" + std::string(name) + "' (linear, nonlinear)");
}

std::string_view input_channel_name(InputChannel channel)
{
    return channel == InputChannel::u1 ? "u1" : "u2";
}

InputChannel parse_input_channel(std::string_view name)
{
    if (name == "u1") return InputChannel::u1;
    if (name == "u2") return InputChannel::u2;
    throw ConfigError("unknown input channel '" + std::string(name) + "' (u1, u2)");
}

void validate_signal(const InputSignal& signal)
{
    if (const auto* s = std::get_if<SinusoidInput>(&signal)) {
        if (!(s->frequency_hz > 0.0) || !std::isfinite(s->frequency_hz)) {
            throw ConfigError("sinusoid frequency must be positive");
        }
        if (!std::isfinite(s->amplitude) || !std::isfinite(s->offset)) {
            throw ConfigError("sinusoid amplitude and offset must be finite");
        }
    } else if (const auto* s = std::get_if<StepInput>(&signal)) {
        if (!std::isfinite(s->u1_amp) || !std::isfinite(s->u2_amp)) throw ConfigError("step amplitudes must be finite");
    } else if (const auto* s = std::get_if<ConstantInput>(&signal)) {
        if (!std::isfinite(s->u1) || !std::isfinite(s->u2)) throw ConfigError("constant inputs must be finite");
    } else if (const auto* s = std::get_if<ClosedLoopInput>(&signal)) {
        s->gains.validate();
        s->options.limits.validate();
        if (!std::isfinite(s->setpoint.x_des) || !std::isfinite(s->setpoint.y_des)) {
            throw ConfigError("setpoint must be finite");
        }
    }
}

void SimConfig::validate() const
{
    if (!std::isfinite(dt) || !std::isfinite(t_end)) throw ConfigError("dt and t_end must be finite");
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    if (dt > t_end) throw ConfigError("dt must not exceed t_end");
    if (t_end / dt > kMaxSamples) throw ConfigError("t_end / dt exceeds the 1e8 sample limit");
    if (!initial_state.is_finite()) throw ConfigError("initial state must be finite");
}

std::size_t SimConfig::sample_count() const
{
    const double ratio = t_end / dt;
    const double nearest = std::round(ratio);
    const double steps = std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio) ? nearest : std::ceil(ratio);
    return static_cast<std::size_t>(steps) + 1;
}

std::vector<double> Trajectory::channel(StateChannel channel) const
{
    std::vector<double> out;
    out.reserve(states.size());
    for (const State& s : states) out.push_back(s[channel]);
    return out;
}

DivergenceError::DivergenceError(Trajectory partial, double failure_time)
    : Error("simulation diverged at t = " + std::to_string(failure_time) + " s"),
      partial_(std::move(partial)),
      failure_time_(failure_time)
{
}

namespace {

using Mat66 = Eigen::Matrix<double, 6, 6>;
using Mat63 = Eigen::Matrix<double, 6, 3>;

Input open_loop_input(const InputSignal& signal, double t, const QuadParams& params)
{
    return std::visit(
        [&](const auto& s) -> Input {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, StepInput>) {
                return Input{s.u1_amp + (s.hover_offset ? params.m * params.g : 0.0), s.u2_amp};
            } else if constexpr (std::is_same_v<T, SinusoidInput>) {
                const double v = s.offset + s.amplitude * std::sin(2.0 * std::numbers::pi * s.frequency_hz * t);
                return s.channel == InputChannel::u1 ? Input{v, 0.0} : Input{0.0, v};
            } else if constexpr (std::is_same_v<T, ConstantInput>) {
                return Input{s.u1, s.u2};
            } else {
                return Input{};
            }
        },
        signal);
}

class PlantModel {
public:
    PlantModel(Plant plant, const QuadParams& params) : plant_(plant), params_(params)
    {
        if (plant_ == Plant::linear) {
            const StateSpace ss = linearize(params);
            A_ = ss.A;
            B_ = ss.B;
        }
    }

    Vec6 operator()(const Vec6& x, const Input& u) const
    {
        if (plant_ == Plant::nonlinear) {
            return deriv_nonlinear(State::from_vector(x), u, params_).to_vector();
        }
        return A_ * x + B_ * Eigen::Vector3d(u.u1, u.u2, params_.g);
    }

private:
    Plant plant_;
    QuadParams params_;
    Mat66 A_ = Mat66::Zero();
    Mat63 B_ = Mat63::Zero();
};

bool within_bounds(const Vec6& x)
{
    return x.allFinite() && x.norm() <= kDivergenceNorm;
}

} // namespace

Trajectory integrate(const SimConfig& config, const InputSignal& signal, const QuadParams& params)
{
    params.validate();
    config.validate();
    validate_signal(signal);

    const PlantModel plant(config.plant, params);
    const auto* closed_loop = std::get_if<ClosedLoopInput>(&signal);
    const std::size_t n = config.sample_count();
    const double dt = config.dt;

    Trajectory traj;
    traj.t.reserve(n);
    traj.states.reserve(n);
    traj.inputs.reserve(n);
    traj.phi_des.reserve(n);

    Vec6 x = config.initial_state.to_vector();
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * dt;
        const State state = State::from_vector(x);

        Input held;
        double phi_des = 0.0;
        if (closed_loop) {
            const ControlOutput c =
                control_law(state, closed_loop->setpoint, closed_loop->gains, params, closed_loop->options);
            held = c.input;
            phi_des = c.diagnostics.phi_des;
        } else {
            held = open_loop_input(signal, t, params);
        }

        traj.t.push_back(t);
        traj.states.push_back(state);
        traj.inputs.push_back(held);
        traj.phi_des.push_back(phi_des);
        if (k + 1 == n) break;

        auto input_at = [&](double stage_t) {
            return closed_loop ? held : open_loop_input(signal, stage_t, params);
        };
        const double half = 0.5 * dt;
        const Vec6 k1 = plant(x, input_at(t));
        const Vec6 k2 = plant(x + half * k1, input_at(t + half));
        const Vec6 k3 = plant(x + half * k2, input_at(t + half));
        const Vec6 k4 = plant(x + dt * k3, input_at(t + dt));
        x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if (!within_bounds(x)) throw DivergenceError(std::move(traj), static_cast<double>(k + 1) * dt);
    }
    return traj;
}

Trajectory open_loop_step(Plant plant, InputChannel channel, const QuadParams& params, double dt, double t_end)
{
    SimConfig config;
    config.plant = plant;
    config.dt = dt;
    config.t_end = t_end;
    const StepInput step = channel == InputChannel::u1 ? StepInput{1.0, 0.0, false} : StepInput{0.0, 1.0, true};
    return integrate(config, step, params);
}

std::optional<double> divergence_time(const Trajectory& a, const Trajectory& b, StateChannel channel,
                                      double threshold)
{
    if (a.t != b.t) throw GridMismatchError("trajectories do not share a time grid");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a.states[i][channel] - b.states[i][channel]) > threshold) return a.t[i];
    }
    return std::nullopt;
}

} // namespace planarquad
