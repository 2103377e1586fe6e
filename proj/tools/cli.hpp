#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nilorb::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,     // bad flags or malformed input
  kDomain = 2,    // a well-formed request outside the mathematical domain (p = 2, inadmissible label, ...)
  kInternal = 3,  // broken library invariant or golden mismatch
};

/// Runs the command line `args` (without the program name). Output is
/// deterministic for fixed arguments and environment.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilorb::cli
