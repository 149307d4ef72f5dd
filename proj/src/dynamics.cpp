#include "planarquad/dynamics.hpp"

#include <cmath>
#include <string>

#include "planarquad/errors.hpp"

namespace planarquad {

void QuadParams::validate() const
{
    if (!std::isfinite(m) || !std::isfinite(g) || !std::isfinite(L) || !std::isfinite(J)) {
        throw ConfigError("quadrotor parameters must be finite");
    }
    if (m <= 0.0) throw ConfigError("mass m must be positive");
    if (J <= 0.0) throw ConfigError("moment of inertia J must be positive");
    if (L <= 0.0) throw ConfigError("span L must be positive");
    if (g < 0.0) throw ConfigError("gravity g must be non-negative");
}

std::string_view channel_name(StateChannel channel)
{
    switch (channel) {
    case StateChannel::x: return "x";
    case StateChannel::y: return "y";
    case StateChannel::phi: return "phi";
    case StateChannel::vx: return "vx";
    case StateChannel::vy: return "vy";
    case StateChannel::omega: return "omega";
    }
    return "?";
}

StateChannel parse_channel(std::string_view name)
{
    for (StateChannel c : kAllChannels) {
        if (channel_name(c) == name) return c;
    }
    throw ConfigError("unknown state channel '" + std::string(name) + "'");
}

double State::operator[](StateChannel channel) const
{
    switch (channel) {
    case StateChannel::x: return x;
    case StateChannel::y: return y;
    case StateChannel::phi: return phi;
    case StateChannel::vx: return vx;
    case StateChannel::vy: return vy;
    case StateChannel::omega: return omega;
    }
    return 0.0;
}

Vec6 State::to_vector() const
{
    Vec6 v;
    v << x, y, phi, vx, vy, omega;
    return v;
}

State State::from_vector(const Vec6& v)
{
    return State{v(0), v(1), v(2), v(3), v(4), v(5)};
}

bool State::is_finite() const
{
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(phi) && std::isfinite(vx) &&
           std::isfinite(vy) && std::isfinite(omega);
}

Vec6 StateDeriv::to_vector() const
{
    Vec6 v;
    v << dx, dy, dphi, ddx, ddy, ddphi;
    return v;
}

StateDeriv StateDeriv::from_vector(const Vec6& v)
{
    return StateDeriv{v(0), v(1), v(2), v(3), v(4), v(5)};
}

bool StateDeriv::is_finite() const
{
    return to_vector().allFinite();
}

bool Input::is_finite() const
{
    return std::isfinite(u1) && std::isfinite(u2);
}

Input mix(const MotorForces& forces, const QuadParams& params)
{
    return Input{forces.f1 + forces.f2, 0.5 * params.L * (forces.f1 - forces.f2)};
}

MotorForces unmix(const Input& input, const QuadParams& params)
{
    if (!(params.L > 0.0)) throw ConfigError("unmix requires a positive span L");
    const double half_thrust = 0.5 * input.u1;
    const double differential = input.u2 / params.L;
    return MotorForces{half_thrust + differential, half_thrust - differential};
}

StateDeriv deriv_nonlinear(const State& state, const Input& input, const QuadParams& params)
{
    const double thrust_accel = input.u1 / params.m;
    return StateDeriv{
        state.vx,
        state.vy,
        state.omega,
        -thrust_accel * std::sin(state.phi),
        -params.g + thrust_accel * std::cos(state.phi),
        input.u2 / params.J,
    };
}

Equilibrium equilibrium(const QuadParams& params)
{
    return Equilibrium{State{}, Input{params.m * params.g, 0.0}};
}

} // namespace planarquad
