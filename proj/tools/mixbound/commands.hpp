#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mixbound::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,   ///< a bound, band or certificate failed (or numerical failure)
  kInvalidInput = 2,  ///< bad flags, spec, eps or range
  kBadChain = 3,      ///< not reversible or not irreducible
  kAllCensored = 4,
};

/// Parses argv and runs the selected subcommand. Diagnostics go to `err`;
/// data goes to --out (stdout when absent or "-").
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace mixbound::cli
