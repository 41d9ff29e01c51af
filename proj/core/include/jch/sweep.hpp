#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jch/model.hpp"
#include "jch/solver.hpp"

namespace jch {

/// Values along one grid axis.
struct Axis {
  std::vector<double> values;

  /// count >= 1 evenly spaced points from min to max (min only when count = 1).
  static Axis linear(double min, double max, std::size_t count);
  /// Evenly spaced in sign(x) log10(1 + |x|), so the spacing is fine near
  /// zero and coarse in the tails. Zero is hit exactly when the range is
  /// symmetric and the count odd.
  static Axis log_signed(double min, double max, std::size_t count);
  static Axis list(std::vector<double> values);
};

struct GridSpec {
  Axis delta;
  Axis hopping;
  std::vector<int> n_values;
};

enum class Phase {
  polaritonic_insulator,
  photonic_superfluid,
  coexisting,
  polaritonic_superfluid,
  indeterminate,
};

[[nodiscard]] std::string_view to_string(Phase phase) noexcept;
[[nodiscard]] std::optional<Phase> parse_phase(std::string_view text) noexcept;

/// Phase boundaries are drawn by thresholds on d_n1 / N and d_n1a.
struct PhaseThresholds {
  double superfluid = 0.05;  // on d_n1 / N
  double atomic = 0.01;      // on d_n1a
};

/// Decision list: insulator if d_n1_rel < superfluid; otherwise, when
/// d_n1a < atomic, photonic superfluid if P(N_A=0) > 1/2 or coexisting if
/// P(N_A=2) > 1/2; otherwise polaritonic superfluid. Degenerate ground
/// states are always indeterminate.
[[nodiscard]] Phase classify_phase(double d_n1_rel, double d_n1a,
                                   const std::array<double, 3>& p_na, bool degenerate,
                                   const PhaseThresholds& thresholds = {});

struct SweepRecord {
  double delta = 0.0;
  double h = 0.0;
  int n_total = 0;
  double energy = 0.0;
  double gap = 0.0;
  double d_n1 = 0.0;
  double d_n1_rel = 0.0;
  double d_n1a = 0.0;
  double prod = 0.0;      // d_n1 * d_n1a
  double prod_rel = 0.0;  // (d_n1 / N) * d_n1a
  std::array<double, 3> p_na{};
  Phase phase = Phase::indeterminate;
  bool degenerate = false;
  bool failed = false;  // solver error at this point; numeric fields are NaN
};

struct SweepOptions {
  PhaseThresholds thresholds;
  SolverOptions solver;
  unsigned jobs = 1;  // worker threads; 0 means hardware concurrency
};

/// Ground state plus every observable for one parameter point, all taken
/// from the same eigenvector. Throws on solver failure.
[[nodiscard]] SweepRecord evaluate_point(const ModelParams& params, int n_total,
                                         const SweepOptions& options = {});

/// One record per grid point in (N, h, delta) order, each axis in the order
/// given, independent of how points are scheduled across threads. Points
/// whose solve fails come back with failed = true.
[[nodiscard]] std::vector<SweepRecord> run_sweep(const GridSpec& grid,
                                                 const ModelParams& base,
                                                 const SweepOptions& options = {});

[[nodiscard]] std::size_t count_failures(std::span<const SweepRecord> records) noexcept;

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};
[[nodiscard]] LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// d_n1 against N at delta = +|delta| and delta = -|delta|.
struct VarianceScanBranch {
  double delta = 0.0;
  std::vector<SweepRecord> records;
  LinearFit fit;
};
struct VarianceScan {
  VarianceScanBranch positive;
  VarianceScanBranch negative;
};
[[nodiscard]] VarianceScan fig9_scan(double h, double delta_magnitude, std::span<const int> n_values,
                                     const ModelParams& base = {},
                                     const SweepOptions& options = {});

/// Span max - min of the delta values (within one N and h) whose record
/// satisfies `d_n1a > threshold`; 0 when none does.
[[nodiscard]] double atomic_variance_width(std::span<const SweepRecord> records, int n_total,
                                           double threshold);

/// Largest prod_rel among records with the given N.
[[nodiscard]] double max_relative_product(std::span<const SweepRecord> records, int n_total);

/// Smallest N (in the order the records list them) for which no record with
/// |delta| <= window has d_n1_rel below `epsilon`, i.e. the insulating dip
/// around resonance no longer reaches the threshold. nullopt when every N
/// still dips.
[[nodiscard]] std::optional<int> insulator_dip_breakdown(std::span<const SweepRecord> records,
                                                         double epsilon, double window);

}  // namespace jch
