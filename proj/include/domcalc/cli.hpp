#pragma once

#include <iosfwd>

namespace domcalc {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // usage errors, unreadable files, other engine errors
  kExitUnknown = 2,
  kExitParse = 3,
  kExitNonNormalizable = 4,
  kExitMismatch = 5,
};

/// Dispatches one subcommand; never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace domcalc
