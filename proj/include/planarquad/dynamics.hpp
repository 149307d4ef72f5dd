#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include <Eigen/Core>

namespace planarquad {

using Vec6 = Eigen::Matrix<double, 6, 1>;

/// Physical constants of the planar quadrotor. Defaults are the reference
/// vehicle: 180 g, 86 mm span, J = 2.5e-4 kg m^2.
struct QuadParams {
    double m = 0.18;   ///< mass [kg]
    double g = 9.8;    ///< gravitational acceleration [m/s^2]
    double L = 0.086;  ///< rotor-to-rotor span [m]
    double J = 2.5e-4; ///< moment of inertia about the body axis [kg m^2]

    /// Throws ConfigError unless m, J, L > 0, g >= 0 and all are finite.
    void validate() const;

    bool operator==(const QuadParams&) const = default;
};

/// Index of a slot in the six-element state (and state-derivative) vector.
enum class StateChannel : std::size_t { x = 0, y, phi, vx, vy, omega };

inline constexpr std::array<StateChannel, 6> kAllChannels = {
    StateChannel::x,  StateChannel::y,  StateChannel::phi,
    StateChannel::vx, StateChannel::vy, StateChannel::omega};

std::string_view channel_name(StateChannel channel);
/// Accepts "x", "y", "phi", "vx", "vy", "omega"; throws ConfigError otherwise.
StateChannel parse_channel(std::string_view name);

/// Vehicle state, ordered (x, y, phi, vx, vy, omega). The angle is not wrapped.
struct State {
    double x = 0.0;
    double y = 0.0;
    double phi = 0.0;
    double vx = 0.0;
    double vy = 0.0;
    double omega = 0.0;

    double operator[](StateChannel channel) const;

    Vec6 to_vector() const;
    static State from_vector(const Vec6& v);

    bool is_finite() const;

    bool operator==(const State&) const = default;
};

/// Time derivative of a State, slot for slot.
struct StateDeriv {
    double dx = 0.0;
    double dy = 0.0;
    double dphi = 0.0;
    double ddx = 0.0;
    double ddy = 0.0;
    double ddphi = 0.0;

    Vec6 to_vector() const;
    static StateDeriv from_vector(const Vec6& v);

    bool is_finite() const;

    bool operator==(const StateDeriv&) const = default;
};

/// Net thrust u1 [N] and net moment u2 [N m]. No sign restriction.
struct Input {
    double u1 = 0.0;
    double u2 = 0.0;

    bool is_finite() const;

    bool operator==(const Input&) const = default;
};

/// Individual rotor thrusts [N].
struct MotorForces {
    double f1 = 0.0;
    double f2 = 0.0;

    bool operator==(const MotorForces&) const = default;
};

struct Equilibrium {
    State state;
    Input input;
};

/// u1 = f1 + f2, u2 = (L/2)(f1 - f2).
Input mix(const MotorForces& forces, const QuadParams& params);

/// Inverse of mix. Throws ConfigError when L <= 0.
MotorForces unmix(const Input& input, const QuadParams& params);

/// Newton-Euler equations of motion:
///   x'' = -u1 sin(phi) / m,  y'' = -g + u1 cos(phi) / m,  phi'' = u2 / J.
StateDeriv deriv_nonlinear(const State& state, const Input& input, const QuadParams& params);

/// Hover at the origin: zero state, u1 = m g, u2 = 0.
Equilibrium equilibrium(const QuadParams& params);

} // namespace planarquad
