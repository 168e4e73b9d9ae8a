#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isospec::cli {

enum ExitStatus : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

/// Runs one command line (without the program name). The report goes to
/// `out` only when the command succeeds; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isospec::cli
