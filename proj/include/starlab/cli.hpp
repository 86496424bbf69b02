#pragma once

#include <iosfwd>

namespace starlab {

/// Exit codes of the command line tool.
enum ExitCode : int {
  kExitPass = 0,
  kExitUsage = 2,  // parse errors in expressions, literals, or flags
  kExitFalse = 3,  // a checked property is false; the witness is printed
  kExitHypothesis = 4,  // hypothesis not met, cap exceeded, or a lookup failed
  kExitVerification = 5,
};

/// Runs one command line. Never throws; every failure maps to an exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace starlab
