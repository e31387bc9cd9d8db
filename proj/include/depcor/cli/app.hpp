#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace depcor::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kSuccess = 0, kDataError = 1, kUsageError = 2 };

/// Runs one CLI invocation. `args` excludes the program name. The JSON report
/// goes to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace depcor::cli
