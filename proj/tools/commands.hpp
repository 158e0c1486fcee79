#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hvh::cli {

/// Process exit codes.
enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 2,      ///< bad flags, unreadable or malformed input
    exit_validation = 3, ///< reference relation, general position, dimensions
    exit_deviation = 4,  ///< an oracle check exceeded its tolerance
};

/// Runs one subcommand (hv, grad, hess, verify, newton, bench). `args` excludes the
/// program name. Results go to `out` (or --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hvh::cli
