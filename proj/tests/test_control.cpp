#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "planarquad/control.hpp"
#include "planarquad/errors.hpp"

using namespace planarquad;

TEST_CASE("at the setpoint the law commands hover")
{
    const QuadParams p;
    State s;
    s.x = 2.0;
    s.y = -1.0;
    const ControlOutput out = control_law(s, Setpoint{2.0, -1.0}, PdGains{}, p);
    CHECK(out.input.u1 == doctest::Approx(p.m * p.g));
    CHECK(out.input.u2 == 0.0);
    CHECK(out.diagnostics.phi_des == 0.0);
}

TEST_CASE("loop terms by hand")
{
    const QuadParams p;
    const PdGains g{7.0, 1.42, 2.5, 0.75, 0.1, 0.01};
    State s;
    s.x = 0.2;
    s.vx = 0.1;
    s.y = 0.5;
    s.vy = -0.3;
    s.phi = 0.05;
    s.omega = 0.4;
    const ControlOutput out = control_law(s, Setpoint{1.0, 1.0}, g, p);
    const double phi_des = -(2.5 * 0.8 - 0.75 * 0.1);
    CHECK(out.diagnostics.phi_des == doctest::Approx(phi_des));
    CHECK(out.input.u1 == doctest::Approx(p.m * p.g + 7.0 * 0.5 + 1.42 * 0.3));
    CHECK(out.input.u2 == doctest::Approx(0.1 * (phi_des - 0.05) - 0.01 * 0.4));

    ControllerOptions literal;
    literal.outer_sign = OuterLoopSign::literal;
    CHECK(control_law(s, Setpoint{1.0, 1.0}, g, p, literal).diagnostics.phi_des == doctest::Approx(-phi_des));
}

TEST_CASE("positive x error tilts toward negative phi")
{
    // x'' = -u1 sin(phi) / m, so moving right needs phi < 0.
    const ControlOutput out = control_law(State{}, Setpoint{1.0, 0.0}, PdGains{}, QuadParams{});
    CHECK(out.diagnostics.phi_des < 0.0);
    CHECK(out.input.u2 < 0.0);
}

TEST_CASE("model-derivative rate reference")
{
    const QuadParams p;
    const PdGains g;
    State s;
    s.vx = 0.2;
    s.phi = 0.1;
    ControllerOptions o;
    o.angle_rate = AngleRateReference::model_derivative;
    const ControlOutput out = control_law(s, Setpoint{1.0, 0.0}, g, p, o);
    const double u1 = p.m * p.g;
    const double xdd = -u1 * std::sin(0.1) / p.m;
    CHECK(out.diagnostics.phi_des_dot == doctest::Approx(-(-g.kp_x * 0.2 - g.kd_x * xdd)));
}

TEST_CASE("clamping")
{
    InputLimits lim;
    CHECK(clamp_policy({5.0, -3.0}, lim).u1 == 5.0);
    lim.u1 = Bounds{0.0, 3.0};
    lim.u2 = Bounds{-0.01, 0.01};
    const Input c = clamp_policy({5.0, -3.0}, lim);
    CHECK(c.u1 == 3.0);
    CHECK(c.u2 == -0.01);

    ControllerOptions o;
    o.limits = lim;
    const ControlOutput out = control_law(State{}, Setpoint{10.0, 10.0}, PdGains{}, QuadParams{}, o);
    CHECK(out.input.u1 == 3.0);
    CHECK(out.diagnostics.u_raw.u1 > 3.0);

    lim.u1 = Bounds{2.0, 1.0};
    CHECK_THROWS_AS(lim.validate(), ConfigError);
}

TEST_CASE("presets")
{
    CHECK(PdGains::preset(GainPreset::tuned) == PdGains{});
    const PdGains reported = PdGains::preset(GainPreset::reported);
    CHECK(reported.kp_x == 0.04);
    CHECK(reported.kp_phi == 2.5);
    const PdGains swapped = PdGains::preset(GainPreset::reported_swapped);
    CHECK(swapped.kp_x == 2.5);
    CHECK(swapped.kd_phi == 0.008);
    for (GainPreset g : {GainPreset::tuned, GainPreset::reported, GainPreset::reported_swapped}) {
        CHECK(parse_preset(preset_name(g)) == g);
    }
    CHECK_THROWS_AS(parse_preset("fast"), ConfigError);
}
