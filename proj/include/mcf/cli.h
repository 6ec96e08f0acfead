#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mcf {

// Exit codes of the mcf tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInputExhausted = 2,
  kExitGuardHit = 3,
  kExitPrecisionExhausted = 4,
  kExitMismatch = 5,
};

// Runs the command line `args` (args[0] is the program name).
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mcf
