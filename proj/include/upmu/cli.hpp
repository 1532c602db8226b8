#pragma once

#include <ostream>

namespace upmu {

/// Exit statuses of the command-line driver.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,  // bad arguments or unreadable/invalid input files
  kExitInfeasible = 3,
  kExitTimeout = 4,
  kExitVerifyFail = 5,
};

/// Runs the `upmu` driver. Normal output goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace upmu
