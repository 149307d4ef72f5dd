#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "planarquad/dynamics.hpp"
#include "planarquad/errors.hpp"

using namespace planarquad;

TEST_CASE("hover equilibrium needs thrust m g and no moment")
{
    const QuadParams p;
    const Equilibrium eq = equilibrium(p);
    CHECK(eq.input.u1 == doctest::Approx(1.764).epsilon(1e-15));
    CHECK(eq.input.u2 == 0.0);
    CHECK(eq.state == State{});

    const StateDeriv d = deriv_nonlinear(eq.state, eq.input, p);
    CHECK(std::abs(d.ddx) < 1e-15);
    CHECK(std::abs(d.ddy) < 1e-15);
    CHECK(d.ddphi == 0.0);
}

TEST_CASE("equations of motion at a hand-worked point")
{
    const QuadParams p;
    State s;
    s.phi = std::numbers::pi / 6.0;
    s.vx = 0.3;
    s.vy = -0.2;
    s.omega = 1.5;
    const Input u{2.0, 0.001};
    const StateDeriv d = deriv_nonlinear(s, u, p);
    CHECK(d.dx == 0.3);
    CHECK(d.dy == -0.2);
    CHECK(d.dphi == 1.5);
    CHECK(d.ddx == doctest::Approx(-2.0 * 0.5 / 0.18));
    CHECK(d.ddy == doctest::Approx(-9.8 + 2.0 * std::sqrt(3.0) / 2.0 / 0.18));
    CHECK(d.ddphi == doctest::Approx(4.0));
}

TEST_CASE("mix and unmix are inverse")
{
    const QuadParams p;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> f(-5.0, 5.0);
    for (int i = 0; i < 1000; ++i) {
        const MotorForces m{f(rng), f(rng)};
        const MotorForces back = unmix(mix(m, p), p);
        CHECK(std::abs(back.f1 - m.f1) <= 1e-12);
        CHECK(std::abs(back.f2 - m.f2) <= 1e-12);
    }
    const Input u = mix({1.0, 0.5}, p);
    CHECK(u.u1 == 1.5);
    CHECK(u.u2 == doctest::Approx(0.043 * 0.5));
}

TEST_CASE("unmix rejects a degenerate arm length")
{
    QuadParams p;
    p.L = 0.0;
    CHECK_THROWS_AS(unmix({1.0, 0.0}, p), ConfigError);
}

TEST_CASE("parameter validation")
{
    QuadParams p;
    CHECK_NOTHROW(p.validate());
    p.J = -1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = QuadParams{};
    p.m = std::nan("");
    CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("angle is not wrapped")
{
    State s;
    s.phi = 7.0;
    s.omega = 1.0;
    const StateDeriv d = deriv_nonlinear(s, {1.0, 0.0}, QuadParams{});
    CHECK(d.dphi == 1.0);
    CHECK(d.ddx == doctest::Approx(-std::sin(7.0) / 0.18));
}

TEST_CASE("state vector conversion and channels")
{
    const State s{1, 2, 3, 4, 5, 6};
    CHECK(State::from_vector(s.to_vector()) == s);
    CHECK(s[StateChannel::omega] == 6.0);
    for (StateChannel c : kAllChannels) CHECK(parse_channel(channel_name(c)) == c);
    CHECK_THROWS_AS(parse_channel("theta"), ConfigError);
}
