#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace omegares::cli {

enum ExitCode : int { ok = 0, usage_error = 1, data_error = 2, not_converged = 3 };

/// Runs one command line. `args` excludes the program name. Data goes to `out` (or the file named
/// by --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace omegares::cli
