#pragma once

#include <ostream>
#include <string>

#include "json.hpp"

#include "planarquad/analysis.hpp"
#include "planarquad/sim.hpp"

namespace planarquad {

/// Column order of every trajectory CSV.
inline constexpr const char* kCsvHeader = "t,x,y,phi,vx,vy,omega,u1,u2,phi_des";

/// Header plus one row per sample, 15 significant digits.
void write_csv(std::ostream& os, const Trajectory& traj);

/// Flat object: overshoot_pct, rise_time_s, settling_time_s, steady_state_error,
/// rise_convention, settling_band, natural_frequency_rad_s. Undefined values are null.
nlohmann::json metrics_to_json(const StepMetrics& metrics);

/// metrics_to_json for the 10-90 convention plus rise_time_0_100_s.
nlohmann::json step_report(const Trajectory& traj, StateChannel channel, double target);

/// Flat object with per-channel max_dev_<ch> / divergence_time_<ch> and, when
/// present, <plant>_<axis>_<metric> entries.
nlohmann::json comparison_to_json(const ComparisonReport& report);

nlohmann::json verdict_to_json(const StabilityVerdict& verdict);

} // namespace planarquad
