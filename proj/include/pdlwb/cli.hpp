#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pdlwb::cli {

enum ExitCode { kOk = 0, kNegative = 1, kInputError = 2, kResourceLimit = 3 };

/// Runs one subcommand. `args` excludes the program name. Results go to
/// `out`, diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdlwb::cli
