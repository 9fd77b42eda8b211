#pragma once

#include <iosfwd>

namespace wfomc::cli {

/// Exit codes of `run`.
enum ExitCode : int { kOk = 0, kUsage = 1, kInput = 2, kResource = 3, kCheckFailed = 4 };

/// Runs one `wfomc` subcommand. Results go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wfomc::cli
