#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sympert::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kDomain = 3,
  kNumeric = 4,
  kInsufficientData = 5,
};

/// Runs the command line `args` (without the program name). JSON written to
/// "stdout" goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sympert::cli
