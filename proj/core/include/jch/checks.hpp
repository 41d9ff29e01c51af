#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace jch {

/// Outcome of one oracle-versus-numerics comparison. `max_deviation` and
/// `tolerance` describe the item with the worst deviation-to-tolerance
/// ratio (a failing item always wins).
struct CheckResult {
  std::string name;
  std::string title;
  bool passed = true;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::string worst_item;
  std::size_t items = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
};

struct CheckOptions {
  int n_max = 30;         // largest even N for the N-scans
  int n_max_random = 12;  // largest N for randomized property checks
  std::uint64_t seed = 20140501;
  unsigned jobs = 1;
};

struct CheckInfo {
  std::string_view name;
  std::string_view title;
};

[[nodiscard]] std::span<const CheckInfo> available_checks() noexcept;

/// Throws InputError for an unknown name.
[[nodiscard]] CheckResult run_check(std::string_view name, const CheckOptions& options = {});

/// Every check, or only the named ones, in registry order.
[[nodiscard]] std::vector<CheckResult> run_checks(const CheckOptions& options = {},
                                                  std::span<const std::string> only = {});

}  // namespace jch
