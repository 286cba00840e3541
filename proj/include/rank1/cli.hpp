#pragma once

#include <iosfwd>

namespace rank1 {

// Exit codes of the command line front end.
inline constexpr int kExitCompletable = 0;
inline constexpr int kExitNotCompletable = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNumericalFailure = 3;

/// Runs one command line. Reports go to out, diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rank1
