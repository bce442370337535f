#pragma once

#include <iosfwd>

namespace bures {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `bures` tool. CSV goes to `out`, diagnostics to `err`.
///
/// Subcommands: report, sweep-werner, sweep-rank2, dynamics, verify. The
/// global --parallel N flag sets the worker count for verify and dynamics.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace bures
