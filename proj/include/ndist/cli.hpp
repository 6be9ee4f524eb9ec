#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ndist {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFinding = 1,  // axiom or bound violation, non-median graph, solver failure
  kExitUsage = 2,    // bad flags, unparsable input, invalid configuration
};

/// Runs the tool on `args` (without the program name). Reports go to `out`
/// unless --out is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ndist
