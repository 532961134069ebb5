#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nevpick::cli {

/// Exit codes shared by every command.
enum ExitCode : int {
  kOk = 0,           // feasible / solved / passed / regular
  kNegative = 1,     // infeasible / failed / not regular
  kInputError = 2,   // malformed or invalid input, unwritable output
  kNumericError = 3  // Gram matrix singular or inconsistent lurking data
};

/// Runs one command.  args excludes the program name, e.g.
/// {"check", "problem.json", "--tol", "1e-9"}.  JSON goes to out,
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nevpick::cli
