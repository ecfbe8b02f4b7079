#pragma once

// The ksplit command-line front end as a library, so tests and the
// acceptance runner can drive it without spawning processes.

#include <iosfwd>
#include <string>
#include <vector>

namespace ksplit::cli {

enum ExitCode : int {
  kSuccess = 0,
  kSemanticFailure = 1,
  kParseFailure = 2,
  kOracleDisagreement = 3,
};

/// `args` excludes the program name. Reports go to `out`, diagnostics to
/// `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ksplit::cli
