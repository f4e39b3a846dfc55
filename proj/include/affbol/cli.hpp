#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace affbol::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kFailed = 1,        // violations, invalid certificate, certificate errors
  kUsage = 2,         // bad flags, unreadable or malformed input
  kBudget = 3,        // search budget exhausted or size cap exceeded
  kInternal = 4,      // a proved bound was contradicted: implementation bug
};

/// Runs one subcommand. `args` excludes the program name. The JSON report
/// goes to `out`, a one-line summary and diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace affbol::cli
