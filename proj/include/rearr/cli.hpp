#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rearr {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitPass = 0,
  kExitAssertionFailed = 1,
  kExitUsage = 2,
  kExitNumerical = 3,
};

/// Runs the `rearr` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rearr
