#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nssga::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kConfigError = 2 };

/// Runs one command line (without the program name). Reports and CSV go to
/// `out` unless redirected to a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nssga::cli
