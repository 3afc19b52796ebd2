#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pbitsa::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 2,
  kInputDataError = 3,
  kRuntimeError = 4,
};

/// Entry point behind the `pbitsa` executable: `run`, `sweep` and `info`
/// subcommands. Summaries go to `out` as CSV, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same as above; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pbitsa::cli
