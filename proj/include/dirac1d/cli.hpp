#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dirac1d::cli {

/// Full command-line front end. `args` excludes the program name.
/// Returns 0 on success, 2 on input errors, 3 on numerical failures.
/// All diagnostics go to `err`; results go to `out` or the --out file.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace dirac1d::cli
