#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blaschke {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitInequalityFails = 2,
  kExitFuzzFailure = 3,
};

/// Runs the command-line tool; args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blaschke
