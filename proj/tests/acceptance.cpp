// Acceptance checks. Prints one PASS/FAIL line per criterion plus soft-target
// notes, and exits nonzero if any hard criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "planarquad/analysis.hpp"
#include "planarquad/linear_model.hpp"
#include "planarquad/sim.hpp"

using namespace planarquad;

namespace {

// Tolerances and bands.
constexpr double kTfRelTol = 1e-9;
constexpr double kTfRuntime = 1.0;
constexpr double kOracleRelTol = 1e-10;
constexpr double kUnboundedLevel = 1e3;
constexpr double kUnboundedHorizon = 40.0;
constexpr double kFailureTime = 0.0396;
constexpr double kFailureTimeTol = 0.001;
constexpr double kXDivergenceThreshold = 0.1;
constexpr double kXDivergenceBy = 0.06;
constexpr double kMaxOvershoot = 16.0;
constexpr double kMinNaturalFreq = 5.0;
constexpr double kMaxRiseTime = 0.35;
constexpr double kMaxSteadyError = 0.01;
constexpr double kProbeTol = 0.01;
constexpr double kProbeHorizon = 5.0;
constexpr double kJacobianTol = 1e-6;
constexpr double kMixTol = 1e-12;
constexpr double kHoverTol = 1e-9;
constexpr double kOvershootFormulaTol = 0.5;
constexpr double kMinOrderRatio = 8.0; // 2^4 / 2

int failures = 0;

void verdict(int id, bool ok, const std::string& what)
{
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
    if (!ok) ++failures;
}

void note(const std::string& what) { std::printf("       %s\n", what.c_str()); }

std::string f(const char* fmt, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, fmt, a, b, c, d);
    return buf;
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

Trajectory closed_step(Plant plant, Setpoint sp, double t_end = 5.0)
{
    SimConfig c;
    c.plant = plant;
    c.t_end = t_end;
    return integrate(c, ClosedLoopInput{PdGains{}, sp, {}}, QuadParams{});
}

void criterion1()
{
    const auto t0 = std::chrono::steady_clock::now();
    const QuadParams p;
    const TfMatrix h = tf_from_ss(linearize(p));
    const auto sym = symbolic_tf(p);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    bool ok = h.rows() == 2 && h.cols() == 3;
    ok = ok && h(0, 0).is_zero() && h(0, 2).is_zero() && h(1, 1).is_zero();
    auto entry_ok = [&](const RationalTF& tf, double k, int power) {
        return tf.num().degree() == 0 && rel(tf.num()[0], k) <= kTfRelTol && tf.den() == Polynomial::monomial(1, power);
    };
    ok = ok && entry_ok(h(0, 1), -39200.0, 4) && entry_ok(h(1, 0), 50.0 / 9.0, 2) && entry_ok(h(1, 2), -1.0, 2);
    const bool sym_ok = sym[0][1].to_string() == "-g / (J s^4)" && sym[1][0].to_string() == "1 / (m s^2)" &&
                        sym[1][2].to_string() == "-1 / s^2" && sym[0][0].zero && sym[0][2].zero && sym[1][1].zero;
    verdict(1, ok && sym_ok && secs < kTfRuntime,
            "transfer matrix x: [0, " + format_pretty(h(0, 1)) + ", 0], y: [" + format_pretty(h(1, 0)) + ", 0, " +
                format_pretty(h(1, 2)) + "]; symbolic " + sym[0][1].to_string() + ", " + sym[1][0].to_string() +
                ", " + sym[1][2].to_string() + f("; %.3g s", secs));
}

void criterion2()
{
    const QuadParams p;
    double worst = 0.0;
    for (double dt : {1e-3, 1e-4}) {
        const Trajectory x = open_loop_step(Plant::linear, InputChannel::u2, p, dt, 2.0);
        const Trajectory y = open_loop_step(Plant::linear, InputChannel::u1, p, dt, 2.0);
        for (std::size_t i = 1; i < x.size(); ++i) {
            const double t = x.t[i];
            worst = std::max(worst, rel(x.states[i].x, -(p.g / p.J) * std::pow(t, 4) / 24.0));
            worst = std::max(worst, rel(y.states[i].y, (1.0 / p.m - p.g) * t * t / 2.0));
        }
    }
    verdict(2, worst <= kOracleRelTol, f("linear RK4 vs closed form, worst relative error %.3g (dt 1e-3, 1e-4)", worst));
}

void criterion3()
{
    const QuadParams p;
    bool ok = true;
    std::string detail;
    for (Plant plant : {Plant::linear, Plant::nonlinear}) {
        for (InputChannel ch : {InputChannel::u1, InputChannel::u2}) {
            Trajectory t;
            try {
                t = open_loop_step(plant, ch, p, 1e-3, kUnboundedHorizon);
            } catch (const DivergenceError& e) {
                t = e.partial();
            }
            // The excited position output: x for the linear moment step (y stays
            // at hover there), y otherwise.
            const StateChannel out = plant == Plant::linear && ch == InputChannel::u2 ? StateChannel::x : StateChannel::y;
            const std::vector<double> v = t.channel(out);
            bool monotone = true;
            std::optional<double> crossed;
            for (std::size_t i = 1; i < v.size(); ++i) {
                monotone = monotone && std::abs(v[i]) >= std::abs(v[i - 1]) && v[i] <= 0.0;
                if (!crossed && std::abs(v[i]) > kUnboundedLevel) crossed = t.t[i];
            }
            const bool run_ok = monotone && crossed && *crossed < kUnboundedHorizon;
            ok = ok && run_ok;
            detail += std::string(plant_name(plant)) + "/" + std::string(input_channel_name(ch)) + " " +
                      std::string(channel_name(out)) + (crossed ? f(" |.|>1e3 at %.2f s", *crossed) : " bounded") +
                      (monotone ? "" : " (not monotone)") + "; ";
        }
    }
    verdict(3, ok, "open-loop steps grow without bound in the negative direction: " + detail);
}

void criterion4()
{
    const QuadParams p;
    const double tf = linear_failure_time(p, std::numbers::pi);
    const Trajectory n = open_loop_step(Plant::nonlinear, InputChannel::u2, p, 1e-4, 0.1);
    const Trajectory l = open_loop_step(Plant::linear, InputChannel::u2, p, 1e-4, 0.1);
    std::size_t i = 0;
    while (i < n.size() && n.states[i].phi < std::numbers::pi) ++i;
    const double simulated = n.t[i];
    const auto div = divergence_time(l, n, StateChannel::x, kXDivergenceThreshold);
    const bool time_ok = std::abs(tf - kFailureTime) <= kFailureTimeTol && std::abs(simulated - tf) <= 1e-4;
    const bool div_ok = div && *div < kXDivergenceBy;
    verdict(4, time_ok && div_ok,
            f("angle reaches pi at %.5f s (simulated %.4f s); ", tf, simulated) +
                (div ? f("x divergence > 0.1 m at %.4f s (needs < 0.06 s)", *div) : std::string("no x divergence")));
    if (!div_ok) {
        const auto rel10 = [&]() -> std::optional<double> {
            for (std::size_t k = 1; k < l.size(); ++k) {
                if (std::abs(l.states[k].x - n.states[k].x) > 0.1 * std::abs(l.states[k].x)) return l.t[k];
            }
            return std::nullopt;
        }();
        note(f("at t = 0.06 s the gap is only %.4f m: |x_lin| = (g/J) t^4/24 = %.4f m and |x_nonlin| <= g t^2/2",
               std::abs(l.states[600].x - n.states[600].x), std::abs(l.states[600].x)));
        if (rel10) note(f("a 10%% relative gap opens at %.4f s", *rel10));
    }
}

void report_soft(const char* label, const StepMetrics& m, double os_target, double tr_target_ms)
{
    const double os = *m.overshoot_pct, tr = m.rise_time_s.value_or(NAN) * 1000.0;
    const bool os_near = std::abs(os - os_target) <= 5.0;
    const bool tr_near = std::abs(tr - tr_target_ms) <= 15.0;
    note(std::string("soft ") + label +
         f(": overshoot %.2f%% vs %.2f%%, ", os, os_target) + (os_near ? "within 5 pp" : "outside 5 pp") +
         f("; 10-90 rise %.1f ms vs %.1f ms, ", tr, tr_target_ms) + (tr_near ? "within 15 ms" : "outside 15 ms"));
}

void criterion5()
{
    const StepMetrics mx = step_metrics(closed_step(Plant::linear, {1.0, 0.0}), StateChannel::x, 1.0);
    const StepMetrics my = step_metrics(closed_step(Plant::linear, {0.0, 1.0}), StateChannel::y, 1.0);
    bool ok = true;
    std::string detail;
    for (const auto& [name, m] : {std::pair{"x", mx}, std::pair{"y", my}}) {
        const double wn = equivalent_natural_frequency(m).value_or(0.0);
        ok = ok && m.overshoot_pct && *m.overshoot_pct <= kMaxOvershoot && wn > kMinNaturalFreq && m.rise_time_s &&
             *m.rise_time_s <= kMaxRiseTime && *m.steady_state_error < kMaxSteadyError;
        detail += std::string(name) + f(": %.2f%% overshoot, rise %.3f s, w_n %.2f rad/s, sse %.2g; ",
                                        m.overshoot_pct.value_or(NAN), m.rise_time_s.value_or(NAN), wn,
                                        m.steady_state_error.value_or(NAN));
    }
    verdict(5, ok, "linear closed loop within 16% / 5 rad/s: " + detail);
    report_soft("x", mx, 11.78, 31.5);
    report_soft("y", my, 7.78, 32.0);
    note("reported rise times near 30 ms are not reachable for a 1 m step with these bands; see README");
}

void criterion6()
{
    const StepMetrics lx = step_metrics(closed_step(Plant::linear, {1.0, 0.0}), StateChannel::x, 1.0);
    const StepMetrics nx = step_metrics(closed_step(Plant::nonlinear, {1.0, 0.0}), StateChannel::x, 1.0);
    // A y-only step keeps phi at 0, where the two plants coincide; the combined
    // step is the one that separates them.
    const Trajectory lxy = closed_step(Plant::linear, {1.0, 1.0});
    const Trajectory nxy = closed_step(Plant::nonlinear, {1.0, 1.0});
    const StepMetrics ly = step_metrics(lxy, StateChannel::y, 1.0);
    const StepMetrics ny = step_metrics(nxy, StateChannel::y, 1.0);
    const bool ok = *nx.overshoot_pct > *lx.overshoot_pct && *ny.overshoot_pct < *ly.overshoot_pct;
    verdict(6, ok,
            f("x overshoot nonlinear %.2f%% > linear %.2f%%; ", *nx.overshoot_pct, *lx.overshoot_pct) +
                f("y overshoot (combined step) nonlinear %.2f%% < linear %.2f%%", *ny.overshoot_pct, *ly.overshoot_pct));
    report_soft("nonlinear x", nx, 20.83, 28.0);
    report_soft("nonlinear y", ny, 3.16, 40.0);
}

void criterion7()
{
    bool ok = true;
    std::string detail;
    for (double phi0 : {-0.5, 1.0}) {
        ProbeRequest r;
        r.initial.phi = phi0;
        r.t_end = kProbeHorizon;
        r.tol = kProbeTol;
        const StabilityVerdict v = stability_probe(r, QuadParams{});
        ok = ok && v.converged;
        detail += f("phi0 %+.1f: final norm %.2g", phi0, v.final_state_norm) +
                  (v.time_to_converge ? f(", within tol from %.2f s; ", *v.time_to_converge) : std::string("; "));
    }
    verdict(7, ok, "nonlinear recovery from tilted starts by 5 s: " + detail);
}

double jacobian_error()
{
    const QuadParams p;
    const StateSpace ss = linearize(p);
    const double h = 1e-6;
    double worst = 0.0;
    auto f = [&](Eigen::Matrix<double, 6, 1> x, Eigen::Vector3d u) {
        QuadParams q = p;
        q.g = u(2);
        return deriv_nonlinear(State::from_vector(x), Input{u(0), u(1)}, q).to_vector();
    };
    const Eigen::Matrix<double, 6, 1> x0 = Eigen::Matrix<double, 6, 1>::Zero();
    const Eigen::Vector3d u0(p.m * p.g, 0.0, p.g);
    for (int j = 0; j < 6; ++j) {
        Eigen::Matrix<double, 6, 1> e = Eigen::Matrix<double, 6, 1>::Zero();
        e(j) = h;
        worst = std::max(worst, ((f(x0 + e, u0) - f(x0 - e, u0)) / (2 * h) - ss.A.col(j)).cwiseAbs().maxCoeff());
    }
    for (int j = 0; j < 3; ++j) {
        Eigen::Vector3d e = Eigen::Vector3d::Zero();
        e(j) = h;
        const Eigen::VectorXd fd = (f(x0, u0 + e) - f(x0, u0 - e)) / (2 * h);
        worst = std::max(worst, ((fd - ss.B.col(j)).cwiseAbs() / std::max(1.0, ss.B.col(j).cwiseAbs().maxCoeff())).maxCoeff());
    }
    return worst;
}

void criterion8()
{
    const QuadParams p;
    const double jac = jacobian_error();

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    double mix_err = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const MotorForces m{u(rng), u(rng)};
        const MotorForces b = unmix(mix(m, p), p);
        mix_err = std::max({mix_err, std::abs(b.f1 - m.f1), std::abs(b.f2 - m.f2)});
    }

    SimConfig hover;
    hover.t_end = 10.0;
    const Trajectory ht = integrate(hover, ConstantInput{p.m * p.g, 0.0}, p);
    double hover_err = 0.0;
    for (const State& s : ht.states) hover_err = std::max(hover_err, s.to_vector().cwiseAbs().maxCoeff());

    double os_err = 0.0;
    for (double zeta : {0.2, 0.4, 0.6, 0.8}) {
        const double w = 5.0, wd = w * std::sqrt(1 - zeta * zeta);
        std::vector<double> t, v;
        for (int i = 0; i <= 40000; ++i) {
            const double s = i * 1e-4;
            t.push_back(s);
            v.push_back(1.0 - std::exp(-zeta * w * s) * (std::cos(wd * s) + zeta * w / wd * std::sin(wd * s)));
        }
        const double formula = 100.0 * std::exp(-zeta * std::numbers::pi / std::sqrt(1 - zeta * zeta));
        os_err = std::max(os_err, std::abs(*step_metrics(t, v, 1.0).overshoot_pct - formula));
    }

    const double x_ref = open_loop_step(Plant::nonlinear, InputChannel::u2, p, 1e-3 / 16, 0.03).states.back().x;
    const double e1 = std::abs(open_loop_step(Plant::nonlinear, InputChannel::u2, p, 1e-3, 0.03).states.back().x - x_ref);
    const double e2 = std::abs(open_loop_step(Plant::nonlinear, InputChannel::u2, p, 5e-4, 0.03).states.back().x - x_ref);
    const double ratio = e1 / e2;

    SimConfig dc;
    dc.t_end = 2.0;
    dc.initial_state.phi = 0.4;
    const InputSignal sig = ClosedLoopInput{PdGains{}, Setpoint{1.0, 1.0}, {}};
    const bool deterministic = integrate(dc, sig, p) == integrate(dc, sig, p);

    const bool ok = jac <= kJacobianTol && mix_err <= kMixTol && hover_err <= kHoverTol &&
                    os_err <= kOvershootFormulaTol && ratio >= kMinOrderRatio && deterministic;
    verdict(8, ok,
            f("Jacobian FD error %.2g, mix round trip %.2g, hover drift %.2g, ", jac, mix_err, hover_err) +
                f("overshoot vs formula %.3f pp, RK4 halving ratio %.1f, ", os_err, ratio) +
                (deterministic ? "bitwise deterministic" : "NOT deterministic"));
}

} // namespace

int main()
{
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::function<void()>> all{criterion1, criterion2, criterion3, criterion4,
                                                 criterion5, criterion6, criterion7, criterion8};
    for (const auto& c : all) {
        try {
            c();
        } catch (const std::exception& e) {
            std::printf("[FAIL] criterion raised: %s\n", e.what());
            ++failures;
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("acceptance: %d failing, %.1f s\n", failures, secs);
    return failures == 0 ? 0 : 1;
}
