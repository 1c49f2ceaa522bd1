#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wallforge::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kBadParameters = 2,
  kIoFailure = 3,
  kNonConvergence = 4,
};

/// Parses argv (argv[0] is the program name) and runs one subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wallforge::cli
