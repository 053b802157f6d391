#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pesgame {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitEquivalent = 0,
  kExitInequivalent = 1,
  kExitUsage = 2,
  kExitCap = 3,
  kExitDisagreement = 4,
};

/// Runs the `pesgame` command line with args (without the program name).
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace pesgame
