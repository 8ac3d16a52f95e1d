#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace homgrow {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitUsage = 2,
  kExitBudget = 3,
  kExitInvariant = 4,
};

/// Runs one command; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace homgrow
