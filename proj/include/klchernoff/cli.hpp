#pragma once

#include <ostream>

namespace klchernoff {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,   // usage or domain error
  kExitVerify = 2,  // verification failure
};

/// Entry point of the `klchernoff` tool. Subcommands: bound, sweep,
/// critical, ci-unseen, ci-coord, verify, mc-tail.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace klchernoff
