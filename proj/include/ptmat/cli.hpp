#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ptmat::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kNumericalFailure = 2,
  kUnitarityViolation = 3,
};

/// Drift above which `evolve` reports a unitarity violation.
inline constexpr double kUnitarityDriftLimit = 1e-6;

/// Runs the command line `args` (args[0] is the program name) and returns the
/// process exit code. Regular output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ptmat::cli
