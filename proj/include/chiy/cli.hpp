#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chiy {

/// Process exit codes, ordered by severity.
enum ExitCode : int {
  kExitOk = 0,
  kExitFinding = 1,      // a check failed or a finding was produced
  kExitUsage = 2,        // usage or input error
  kExitResource = 3,     // resource limit
};

/// Runs the command line (without the program name) and returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chiy
