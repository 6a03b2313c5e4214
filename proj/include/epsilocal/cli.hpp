#pragma once

#include <iosfwd>

namespace epsilocal {

enum ExitCode : int {
  kExitOk = 0,
  kExitTheoremFailure = 1,
  kExitInputError = 2,
  kExitInvariantError = 3,
};

/// Entry point of the epsilocal tool. Writes results to `out`, diagnostics to
/// `err`, and returns one of the ExitCode values.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace epsilocal
