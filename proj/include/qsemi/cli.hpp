#pragma once

#include <iosfwd>

namespace qsemi {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,     ///< unexpected internal error
  kExitParse = 2,       ///< malformed input or command line
  kExitHypothesis = 3,  ///< a mathematical hypothesis does not hold
  kExitNumerical = 4,   ///< numerically indeterminate or non-convergent
};

/// Runs the tool. Data goes to `out` only when the command succeeds (output
/// is buffered, so a failing command writes nothing there); diagnostics go
/// to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qsemi
