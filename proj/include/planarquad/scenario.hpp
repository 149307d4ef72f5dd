#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "planarquad/dynamics.hpp"
#include "planarquad/sim.hpp"

namespace planarquad {

enum class OutputKind { csv, metrics, comparison };

/// Declarative run description, stored as an INI-style key/value file:
///
///   name = closed_x_linear
///   plant = linear
///   outputs = csv, metrics
///
///   [sim]       dt, t_end, x0, y0, phi0, vx0, vy0, omega0
///   [params]    m, g, L, J                      (optional)
///   [signal]    type = step | sinusoid | constant | closed_loop, plus its fields
///   [gains]     preset, kp_y, kd_y, kp_x, kd_x, kp_phi, kd_phi   (closed loop)
///   [setpoint]  x_des, y_des                                     (closed loop)
///   [controller] outer_sign, angle_rate, u1_min, u1_max, u2_min, u2_max
///   [compare]   threshold
struct Scenario {
    std::string name;
    SimConfig sim;
    QuadParams params;
    InputSignal signal;
    std::vector<OutputKind> outputs{OutputKind::csv, OutputKind::metrics};
    double divergence_threshold = 0.1;

    bool wants(OutputKind kind) const;

    bool operator==(const Scenario&) const = default;
};

/// Throws ConfigError on syntax errors, unknown keys or missing fields.
Scenario parse_scenario(std::istream& is);
Scenario parse_scenario_string(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

/// Text that parses back to an identical Scenario (17 significant digits).
std::string serialize_scenario(const Scenario& scenario);

/// `ref` itself when it names an existing file, otherwise `ref` or `ref.ini`
/// inside $PLANARQUAD_SCENARIO_DIR (default ./scenarios).
std::filesystem::path resolve_scenario_path(const std::string& ref);

} // namespace planarquad
