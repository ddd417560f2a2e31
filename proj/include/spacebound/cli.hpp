#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace spacebound {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitPass = 0,
  kExitFail = 1,
  kExitInconclusive = 2,
  kExitUsage = 3,
};

/// Runs the tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spacebound
