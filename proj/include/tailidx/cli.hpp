#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tailidx {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitInputError = 1, kExitNonConvergence = 2 };

/// Newline-separated decimal numbers; blank lines are skipped. Throws Error with the
/// offending line number on a non-numeric line and "no observations" on empty input.
std::vector<double> read_observations(const std::string& path);

/// Runs the CLI on args (without the program name), writing to out / err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tailidx
