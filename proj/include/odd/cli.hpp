#pragma once

#include <iosfwd>

namespace odd::cli {

/// Exit codes: 0 success, 1 verification failure, 2 parse / configuration /
/// input errors, 3 numerical non-convergence (including singular sections).
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Runs the command line `argv[0] <subcommand> ...` writing to out / err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace odd::cli
