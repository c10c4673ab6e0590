#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace skew::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kViolation = 1,     ///< an in-region inequality failed, or a reproduction missed its reference
  kInputError = 2,    ///< bad flags, unreadable input, or a matrix that fails its invariants
};

/// Runs one command line (without the program name) and returns the exit code.
/// Results go to `out`; diagnostics and structured errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skew::cli
