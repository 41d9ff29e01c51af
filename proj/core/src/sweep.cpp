#include "jch/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "jch/errors.hpp"
#include "jch/hilbert.hpp"
#include "jch/observables.hpp"

namespace jch {

Axis Axis::linear(double min, double max, std::size_t count) {
  if (count == 0) throw InputError("grid axis needs at least one point");
  Axis a;
  a.values.reserve(count);
  if (count == 1) {
    a.values.push_back(min);
    return a;
  }
  const double step = (max - min) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) a.values.push_back(min + step * static_cast<double>(i));
  a.values.back() = max;
  return a;
}

Axis Axis::log_signed(double min, double max, std::size_t count) {
  auto forward = [](double x) { return std::copysign(std::log10(1.0 + std::abs(x)), x); };
  auto inverse = [](double t) { return std::copysign(std::pow(10.0, std::abs(t)) - 1.0, t); };
  Axis t = linear(forward(min), forward(max), count);
  for (double& v : t.values) v = inverse(v);
  // Snap the exact ends and an exact zero.
  t.values.front() = min;
  if (count > 1) t.values.back() = max;
  for (double& v : t.values) {
    if (std::abs(v) < 1e-12 * std::max(std::abs(min), std::abs(max))) v = 0.0;
  }
  return t;
}

Axis Axis::list(std::vector<double> values) {
  if (values.empty()) throw InputError("grid axis needs at least one point");
  return Axis{std::move(values)};
}

std::string_view to_string(Phase phase) noexcept {
  switch (phase) {
    case Phase::polaritonic_insulator: return "polaritonic-insulator";
    case Phase::photonic_superfluid: return "photonic-superfluid";
    case Phase::coexisting: return "coexisting";
    case Phase::polaritonic_superfluid: return "polaritonic-superfluid";
    case Phase::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

std::optional<Phase> parse_phase(std::string_view text) noexcept {
  for (Phase p : {Phase::polaritonic_insulator, Phase::photonic_superfluid, Phase::coexisting,
                  Phase::polaritonic_superfluid, Phase::indeterminate}) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

Phase classify_phase(double d_n1_rel, double d_n1a, const std::array<double, 3>& p_na,
                     bool degenerate, const PhaseThresholds& t) {
  if (degenerate) return Phase::indeterminate;
  if (d_n1_rel < t.superfluid) return Phase::polaritonic_insulator;
  if (d_n1a < t.atomic) {
    if (p_na[0] > 0.5) return Phase::photonic_superfluid;
    if (p_na[2] > 0.5) return Phase::coexisting;
  }
  return Phase::polaritonic_superfluid;
}

SweepRecord evaluate_point(const ModelParams& params, int n_total, const SweepOptions& options) {
  const Basis basis(n_total);
  const auto h = build_hamiltonian(params, basis);
  const auto gs = ground_state(h, options.solver);

  const auto site = site_moments(gs.vector, basis, Site::first);
  const auto atom = atom_moments(gs.vector, basis, Site::first);
  const auto product = variance_product(site, atom);

  SweepRecord r;
  r.delta = params.delta;
  r.h = params.hopping;
  r.n_total = n_total;
  r.energy = gs.energy;
  r.gap = gs.gap_to_first_excited;
  r.d_n1 = site.variance;
  r.d_n1_rel = site.relative_variance;
  r.d_n1a = atom.variance;
  r.prod = product.absolute;
  r.prod_rel = product.relative;
  r.p_na = total_atomic_distribution(gs.vector, basis);
  r.degenerate = gs.degenerate;
  r.phase = classify_phase(r.d_n1_rel, r.d_n1a, r.p_na, r.degenerate, options.thresholds);
  return r;
}

namespace {

SweepRecord failed_record(const ModelParams& params, int n_total) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  SweepRecord r;
  r.delta = params.delta;
  r.h = params.hopping;
  r.n_total = n_total;
  r.energy = r.gap = r.d_n1 = r.d_n1_rel = r.d_n1a = r.prod = r.prod_rel = nan;
  r.p_na = {nan, nan, nan};
  r.phase = Phase::indeterminate;
  r.failed = true;
  return r;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const GridSpec& grid, const ModelParams& base,
                                   const SweepOptions& options) {
  if (grid.delta.values.empty() || grid.hopping.values.empty() || grid.n_values.empty()) {
    throw InputError("run_sweep: every grid axis needs at least one value");
  }
  for (int n : grid.n_values) {
    if (n < 0) throw InputError("run_sweep: negative excitation number in grid");
  }
  base.validate();

  struct Task {
    ModelParams params;
    int n_total;
  };
  std::vector<Task> tasks;
  tasks.reserve(grid.n_values.size() * grid.hopping.values.size() * grid.delta.values.size());
  for (int n : grid.n_values) {
    for (double h : grid.hopping.values) {
      for (double d : grid.delta.values) {
        ModelParams p = base;
        p.delta = d;
        p.hopping = h;
        tasks.push_back({p, n});
      }
    }
  }

  std::vector<SweepRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        records[i] = evaluate_point(tasks[i].params, tasks[i].n_total, options);
      } catch (const NumericError&) {
        records[i] = failed_record(tasks[i].params, tasks[i].n_total);
      }
    }
  };

  unsigned jobs = options.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                    : options.jobs;
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, tasks.size()));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  return records;
}

std::size_t count_failures(std::span<const SweepRecord> records) noexcept {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return r.failed; }));
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InputError("least_squares: need at least two (x, y) pairs of equal length");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw InputError("least_squares: x values are all equal");
  const double slope = sxy / sxx;
  return LinearFit{slope, my - slope * mx};
}

VarianceScan fig9_scan(double h, double delta_magnitude, std::span<const int> n_values,
                       const ModelParams& base, const SweepOptions& options) {
  auto branch = [&](double delta) {
    GridSpec grid{Axis::list({delta}), Axis::list({h}), {n_values.begin(), n_values.end()}};
    VarianceScanBranch b;
    b.delta = delta;
    b.records = run_sweep(grid, base, options);
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& r : b.records) {
      if (r.failed) continue;
      x.push_back(r.n_total);
      y.push_back(r.d_n1);
    }
    if (x.size() >= 2) b.fit = least_squares(x, y);
    return b;
  };
  const double m = std::abs(delta_magnitude);
  return VarianceScan{branch(m), branch(-m)};
}

double atomic_variance_width(std::span<const SweepRecord> records, int n_total, double threshold) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& r : records) {
    if (r.n_total != n_total || r.failed || !(r.d_n1a > threshold)) continue;
    lo = std::min(lo, r.delta);
    hi = std::max(hi, r.delta);
  }
  return hi >= lo ? hi - lo : 0.0;
}

double max_relative_product(std::span<const SweepRecord> records, int n_total) {
  double best = 0.0;
  for (const auto& r : records) {
    if (r.n_total == n_total && !r.failed) best = std::max(best, r.prod_rel);
  }
  return best;
}

std::optional<int> insulator_dip_breakdown(std::span<const SweepRecord> records, double epsilon,
                                           double window) {
  std::vector<int> order;
  for (const auto& r : records) {
    if (std::find(order.begin(), order.end(), r.n_total) == order.end()) order.push_back(r.n_total);
  }
  for (int n : order) {
    bool dips = false;
    for (const auto& r : records) {
      if (r.n_total == n && !r.failed && std::abs(r.delta) <= window && r.d_n1_rel < epsilon) {
        dips = true;
        break;
      }
    }
    if (!dips) return n;
  }
  return std::nullopt;
}

}  // namespace jch
