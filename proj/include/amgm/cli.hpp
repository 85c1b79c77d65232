#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace amgm {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitProvedFailure = 1,
  kExitUsage = 2,
  kExitCounterexample = 3,
};

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// --out when given, otherwise to `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace amgm
