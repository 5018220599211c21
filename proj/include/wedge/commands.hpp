#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wedge::cli {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kSuccess = 0,
  kVerdictFailure = 1,
  kInputError = 2,
  kNumericalFailure = 3,
};

/// Runs one invocation; args excludes the program name. Reports go to out
/// (or to --out), diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wedge::cli
