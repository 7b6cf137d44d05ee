#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scpcs::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kDataError = 2,
  kInfeasible = 3,
};

// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scpcs::cli
