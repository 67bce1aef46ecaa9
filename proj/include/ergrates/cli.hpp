#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ergrates {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBudget = 3;

/// Runs one CLI invocation. `args` excludes the program name. Artifacts go
/// to the configured output paths, or to `out` when none is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ergrates
