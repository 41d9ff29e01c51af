#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "jch/sweep.hpp"

namespace jch::cli {

enum ExitCode : int {
  kSuccess = 0,
  kCheckFailure = 1,
  kUsageError = 2,
  kNumericFailure = 3,
};

/// Grid axis from `min:max:count`, `min:max:count:log`, a comma list
/// `a,b,c`, or an arithmetic progression `a,b,...,c`. Throws InputError.
[[nodiscard]] Axis parse_axis(std::string_view text);

/// Excitation numbers as a comma list or `a,b,...,c` progression.
/// Throws InputError for negative or non-integer entries.
[[nodiscard]] std::vector<int> parse_n_values(std::string_view text);

/// Runs the command line and returns the process exit code. Reports go to
/// `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jch::cli
