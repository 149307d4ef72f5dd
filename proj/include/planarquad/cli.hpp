#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace planarquad {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitDiverged = 2;

/// Command-line entry point. `args` excludes the program name. Results go to
/// `out`, diagnostics to `err`. Returns 0 on success, 1 on bad flags or
/// scenario errors, 2 when a simulation diverged.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace planarquad
