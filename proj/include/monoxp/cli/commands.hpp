#pragma once

#include <ostream>

namespace monoxp::cli {

/// Process exit codes.
enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_no_explanation = 2,
  exit_oracle_failure = 3,
};

/// Entry point of the `monoxp` tool. Records go to `out` as JSON Lines;
/// usage text and diagnostics go to `err`.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace monoxp::cli
