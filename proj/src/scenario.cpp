#include "planarquad/scenario.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "planarquad/errors.hpp"

namespace planarquad {

namespace pt = boost::property_tree;

bool Scenario::wants(OutputKind kind) const
{
    return std::find(outputs.begin(), outputs.end(), kind) != outputs.end();
}

namespace {

std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::string_view output_name(OutputKind k)
{
    switch (k) {
    case OutputKind::csv: return "csv";
    case OutputKind::metrics: return "metrics";
    case OutputKind::comparison: return "comparison";
    }
    return "?";
}

OutputKind parse_output(const std::string& s)
{
    for (OutputKind k : {OutputKind::csv, OutputKind::metrics, OutputKind::comparison}) {
        if (output_name(k) == s) return k;
    }
    throw ConfigError("unknown output kind '" + s + "' (csv, metrics, comparison)");
}

bool filesystem_safe(const std::string& name)
{
    if (name.empty() || name.front() == '.') return false;
    return std::all_of(name.begin(), name.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '-' || c == '.';
    });
}

// Reads keys from one ptree section, remembering which were consumed so
// leftovers can be reported as typos.
class Section {
public:
    Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

    bool present() const { return tree_ != nullptr; }
    bool has(const std::string& key) const { return tree_ && tree_->find(key) != tree_->not_found(); }

    std::string text(const std::string& key)
    {
        used_.insert(key);
        if (!has(key)) throw ConfigError(where(key) + " is required");
        return trim(tree_->get<std::string>(key));
    }

    std::string text_or(const std::string& key, const std::string& fallback)
    {
        return has(key) ? text(key) : fallback;
    }

    double number(const std::string& key)
    {
        const std::string s = text(key);
        std::istringstream is(s);
        is.imbue(std::locale::classic());
        double v = 0.0;
        is >> v;
        if (is.fail() || !is.eof()) throw ConfigError(where(key) + " is not a number: '" + s + "'");
        return v;
    }

    double number_or(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

    bool boolean_or(const std::string& key, bool fallback)
    {
        if (!has(key)) return fallback;
        const std::string s = text(key);
        if (s == "true" || s == "1" || s == "yes") return true;
        if (s == "false" || s == "0" || s == "no") return false;
        throw ConfigError(where(key) + " must be true or false, got '" + s + "'");
    }

    void reject_unused() const
    {
        if (!tree_) return;
        for (const auto& [key, child] : *tree_) {
            if (!child.empty()) continue;
            if (!used_.count(key)) throw ConfigError("unknown key " + where(key));
        }
    }

private:
    std::string where(const std::string& key) const
    {
        return name_.empty() ? "'" + key + "'" : "'" + name_ + "." + key + "'";
    }

    const pt::ptree* tree_;
    std::string name_;
    std::set<std::string> used_;
};

const pt::ptree* child_or_null(const pt::ptree& root, const std::string& name)
{
    const auto it = root.find(name);
    if (it == root.not_found()) return nullptr;
    return &it->second;
}

std::optional<Bounds> read_bounds(Section& s, const std::string& lo_key, const std::string& hi_key)
{
    const bool lo = s.has(lo_key), hi = s.has(hi_key);
    if (!lo && !hi) return std::nullopt;
    if (lo != hi) throw ConfigError("'controller." + lo_key + "' and '" + hi_key + "' must be given together");
    return Bounds{s.number(lo_key), s.number(hi_key)};
}

ClosedLoopInput read_closed_loop(const pt::ptree& root)
{
    ClosedLoopInput cl;

    Section gains(child_or_null(root, "gains"), "gains");
    cl.gains = PdGains::preset(parse_preset(gains.text_or("preset", "tuned")));
    cl.gains.kp_y = gains.number_or("kp_y", cl.gains.kp_y);
    cl.gains.kd_y = gains.number_or("kd_y", cl.gains.kd_y);
    cl.gains.kp_x = gains.number_or("kp_x", cl.gains.kp_x);
    cl.gains.kd_x = gains.number_or("kd_x", cl.gains.kd_x);
    cl.gains.kp_phi = gains.number_or("kp_phi", cl.gains.kp_phi);
    cl.gains.kd_phi = gains.number_or("kd_phi", cl.gains.kd_phi);
    gains.reject_unused();

    Section setpoint(child_or_null(root, "setpoint"), "setpoint");
    if (!setpoint.present()) throw ConfigError("closed_loop signal requires a [setpoint] section");
    cl.setpoint.x_des = setpoint.number("x_des");
    cl.setpoint.y_des = setpoint.number("y_des");
    setpoint.reject_unused();

    Section ctrl(child_or_null(root, "controller"), "controller");
    const std::string sign = ctrl.text_or("outer_sign", "negated");
    if (sign == "negated") cl.options.outer_sign = OuterLoopSign::negated;
    else if (sign == "literal") cl.options.outer_sign = OuterLoopSign::literal;
    else throw ConfigError("'controller.outer_sign' must be negated or literal");
    const std::string rate = ctrl.text_or("angle_rate", "zero");
    if (rate == "zero") cl.options.angle_rate = AngleRateReference::zero;
    else if (rate == "model_derivative") cl.options.angle_rate = AngleRateReference::model_derivative;
    else throw ConfigError("'controller.angle_rate' must be zero or model_derivative");
    cl.options.limits.u1 = read_bounds(ctrl, "u1_min", "u1_max");
    cl.options.limits.u2 = read_bounds(ctrl, "u2_min", "u2_max");
    ctrl.reject_unused();
    return cl;
}

InputSignal read_signal(const pt::ptree& root)
{
    Section s(child_or_null(root, "signal"), "signal");
    if (!s.present()) throw ConfigError("missing [signal] section");
    const std::string type = s.text("type");
    InputSignal out;
    if (type == "step") {
        if (!s.has("u1_amp") && !s.has("u2_amp")) throw ConfigError("step signal needs u1_amp or u2_amp");
        out = StepInput{s.number_or("u1_amp", 0.0), s.number_or("u2_amp", 0.0), s.boolean_or("hover_offset", false)};
    } else if (type == "sinusoid") {
        SinusoidInput sin;
        sin.channel = parse_input_channel(s.text("channel"));
        sin.amplitude = s.number("amplitude");
        sin.frequency_hz = s.number("frequency_hz");
        sin.offset = s.number_or("offset", 0.0);
        out = sin;
    } else if (type == "constant") {
        out = ConstantInput{s.number("u1"), s.number("u2")};
    } else if (type == "closed_loop") {
        out = read_closed_loop(root);
    } else {
        throw ConfigError("unknown signal type '" + type + "' (step, sinusoid, constant, closed_loop)");
    }
    s.reject_unused();
    if (type != "closed_loop") {
        for (const char* sec : {"gains", "setpoint", "controller"}) {
            if (child_or_null(root, sec)) {
                throw ConfigError(std::string("[") + sec + "] only applies to closed_loop signals");
            }
        }
    }
    validate_signal(out);
    return out;
}

Scenario from_tree(const pt::ptree& root)
{
    static const std::set<std::string> kSections = {"sim",   "params",   "signal",     "gains",
                                                    "setpoint", "controller", "compare"};
    for (const auto& [key, child] : root) {
        if (!child.empty() && !kSections.count(key)) throw ConfigError("unknown section [" + key + "]");
    }

    Scenario sc;
    Section top(&root, "");
    sc.name = top.text("name");
    if (!filesystem_safe(sc.name)) {
        throw ConfigError("scenario name '" + sc.name + "' must be non-empty and use only [A-Za-z0-9_.-]");
    }
    sc.sim.plant = parse_plant(top.text("plant"));
    if (top.has("outputs")) {
        sc.outputs.clear();
        std::istringstream list(top.text("outputs"));
        std::string item;
        while (std::getline(list, item, ',')) {
            item = trim(item);
            if (!item.empty()) sc.outputs.push_back(parse_output(item));
        }
    }
    top.reject_unused();

    Section sim(child_or_null(root, "sim"), "sim");
    sc.sim.dt = sim.number_or("dt", kDefaultDt);
    sc.sim.t_end = sim.number_or("t_end", sc.sim.t_end);
    sc.sim.initial_state.x = sim.number_or("x0", 0.0);
    sc.sim.initial_state.y = sim.number_or("y0", 0.0);
    sc.sim.initial_state.phi = sim.number_or("phi0", 0.0);
    sc.sim.initial_state.vx = sim.number_or("vx0", 0.0);
    sc.sim.initial_state.vy = sim.number_or("vy0", 0.0);
    sc.sim.initial_state.omega = sim.number_or("omega0", 0.0);
    sim.reject_unused();
    sc.sim.validate();

    Section params(child_or_null(root, "params"), "params");
    sc.params.m = params.number_or("m", sc.params.m);
    sc.params.g = params.number_or("g", sc.params.g);
    sc.params.L = params.number_or("L", sc.params.L);
    sc.params.J = params.number_or("J", sc.params.J);
    params.reject_unused();
    sc.params.validate();

    sc.signal = read_signal(root);

    Section compare(child_or_null(root, "compare"), "compare");
    sc.divergence_threshold = compare.number_or("threshold", sc.divergence_threshold);
    compare.reject_unused();
    if (!(sc.divergence_threshold > 0.0)) throw ConfigError("'compare.threshold' must be positive");
    return sc;
}

std::string num(double v)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return os.str();
}

} // namespace

Scenario parse_scenario(std::istream& is)
{
    pt::ptree root;
    try {
        pt::read_ini(is, root);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("scenario syntax error: ") + e.what());
    }
    try {
        return from_tree(root);
    } catch (const pt::ptree_error& e) {
        throw ConfigError(std::string("scenario error: ") + e.what());
    }
}

Scenario parse_scenario_string(const std::string& text)
{
    std::istringstream is(text);
    return parse_scenario(is);
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file '" + path.string() + "'");
    return parse_scenario(in);
}

std::string serialize_scenario(const Scenario& sc)
{
    std::ostringstream os;
    os << "name = " << sc.name << '\n';
    os << "plant = " << plant_name(sc.sim.plant) << '\n';
    os << "outputs = ";
    for (std::size_t i = 0; i < sc.outputs.size(); ++i) os << (i ? ", " : "") << output_name(sc.outputs[i]);
    os << "\n\n[sim]\n";
    os << "dt = " << num(sc.sim.dt) << '\n';
    os << "t_end = " << num(sc.sim.t_end) << '\n';
    const State& s0 = sc.sim.initial_state;
    os << "x0 = " << num(s0.x) << "\ny0 = " << num(s0.y) << "\nphi0 = " << num(s0.phi) << '\n';
    os << "vx0 = " << num(s0.vx) << "\nvy0 = " << num(s0.vy) << "\nomega0 = " << num(s0.omega) << '\n';

    os << "\n[params]\n";
    os << "m = " << num(sc.params.m) << "\ng = " << num(sc.params.g) << '\n';
    os << "L = " << num(sc.params.L) << "\nJ = " << num(sc.params.J) << '\n';

    os << "\n[signal]\n";
    std::visit(
        [&](const auto& sig) {
            using T = std::decay_t<decltype(sig)>;
            if constexpr (std::is_same_v<T, StepInput>) {
                os << "type = step\nu1_amp = " << num(sig.u1_amp) << "\nu2_amp = " << num(sig.u2_amp)
                   << "\nhover_offset = " << (sig.hover_offset ? "true" : "false") << '\n';
            } else if constexpr (std::is_same_v<T, SinusoidInput>) {
                os << "type = sinusoid\nchannel = " << input_channel_name(sig.channel)
                   << "\namplitude = " << num(sig.amplitude) << "\nfrequency_hz = " << num(sig.frequency_hz)
                   << "\noffset = " << num(sig.offset) << '\n';
            } else if constexpr (std::is_same_v<T, ConstantInput>) {
                os << "type = constant\nu1 = " << num(sig.u1) << "\nu2 = " << num(sig.u2) << '\n';
            } else {
                os << "type = closed_loop\n";
                const PdGains& g = sig.gains;
                os << "\n[gains]\n";
                os << "kp_y = " << num(g.kp_y) << "\nkd_y = " << num(g.kd_y) << '\n';
                os << "kp_x = " << num(g.kp_x) << "\nkd_x = " << num(g.kd_x) << '\n';
                os << "kp_phi = " << num(g.kp_phi) << "\nkd_phi = " << num(g.kd_phi) << '\n';
                os << "\n[setpoint]\nx_des = " << num(sig.setpoint.x_des) << "\ny_des = " << num(sig.setpoint.y_des)
                   << '\n';
                os << "\n[controller]\n";
                os << "outer_sign = " << (sig.options.outer_sign == OuterLoopSign::negated ? "negated" : "literal")
                   << '\n';
                os << "angle_rate = "
                   << (sig.options.angle_rate == AngleRateReference::zero ? "zero" : "model_derivative") << '\n';
                if (sig.options.limits.u1) {
                    os << "u1_min = " << num(sig.options.limits.u1->lo) << "\nu1_max = " << num(sig.options.limits.u1->hi)
                       << '\n';
                }
                if (sig.options.limits.u2) {
                    os << "u2_min = " << num(sig.options.limits.u2->lo) << "\nu2_max = " << num(sig.options.limits.u2->hi)
                       << '\n';
                }
            }
        },
        sc.signal);

    os << "\n[compare]\nthreshold = " << num(sc.divergence_threshold) << '\n';
    return os.str();
}

std::filesystem::path resolve_scenario_path(const std::string& ref)
{
    namespace fs = std::filesystem;
    if (fs::is_regular_file(ref)) return ref;
    const char* env = std::getenv("PLANARQUAD_SCENARIO_DIR");
    const fs::path dir = env && *env ? fs::path(env) : fs::path("scenarios");
    for (const fs::path& candidate : {dir / ref, dir / (ref + ".ini")}) {
        if (fs::is_regular_file(candidate)) return candidate;
    }
    throw ConfigError("scenario '" + ref + "' not found (looked in " + dir.string() + ")");
}

} // namespace planarquad
