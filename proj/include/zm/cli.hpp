#pragma once
// The zmoments command line: one subcommand per module.

#include <iosfwd>

namespace zm {

/// Exit codes: 0 success, 1 invalid arguments or parameters, 2 runtime failure.
int dispatch(int argc, const char* const* argv);

/// Runs the built-in invariant checks; prints one line per check, returns the
/// number of failures.
int run_selftest(std::ostream& out);

}  // namespace zm
