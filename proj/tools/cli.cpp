#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "jch/analytic.hpp"
#include "jch/checks.hpp"
#include "jch/errors.hpp"
#include "jch/hilbert.hpp"
#include "jch/model.hpp"
#include "jch/observables.hpp"
#include "jch/solver.hpp"
#include "jch/sweep_io.hpp"

namespace jch::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double to_double(std::string_view s) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw InputError("not a finite number: '" + std::string(s) + "'");
  }
  return v;
}

std::size_t to_count(std::string_view s) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v == 0) {
    throw InputError("grid point count must be a positive integer, got '" + std::string(s) + "'");
  }
  return v;
}

// `a,b,...,c` with step b - a; c must be reached within rounding.
std::vector<double> progression(double a, double b, double c) {
  const double step = b - a;
  if (step == 0.0 || (c - a) / step < 0.0) {
    throw InputError("progression a,b,...,c must step from a towards c");
  }
  const double steps = (c - a) / step;
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, std::abs(steps))) {
    throw InputError("progression end is not reached by whole steps");
  }
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(rounded) + 1;
  for (std::size_t i = 0; i < count; ++i) out.push_back(a + step * static_cast<double>(i));
  out.back() = c;
  return out;
}

std::vector<double> parse_list(std::string_view text) {
  const auto parts = split(text, ',');
  const auto ellipsis = std::find(parts.begin(), parts.end(), "...");
  if (ellipsis == parts.end()) {
    std::vector<double> out;
    for (auto p : parts) out.push_back(to_double(p));
    return out;
  }
  if (parts.size() != 4 || ellipsis != parts.begin() + 2) {
    throw InputError("progressions are written a,b,...,c");
  }
  return progression(to_double(parts[0]), to_double(parts[1]), to_double(parts[3]));
}

ModelParams model_from(double delta, double hopping, double lambda, double omega_c) {
  ModelParams p;
  p.delta = delta;
  p.hopping = hopping;
  p.lambda = lambda;
  p.omega_c = omega_c;
  p.validate();
  return p;
}

OutputFormat format_from(const std::string& name) {
  if (auto f = parse_output_format(name)) return *f;
  throw InputError("unknown output format '" + name + "' (csv or json)");
}

struct Common {
  double lambda = 1.0;
  double omega_c = 0.0;
  double tol = 1e-10;
  unsigned jobs = 1;
  double eps_sf = 0.05;
  double eps_a = 0.01;

  SweepOptions sweep_options() const {
    SweepOptions o;
    o.solver.tol = tol;
    o.jobs = jobs;
    o.thresholds.superfluid = eps_sf;
    o.thresholds.atomic = eps_a;
    return o;
  }
};

void add_model_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--lambda", c.lambda, "Atom-cavity coupling (energy unit)")
      ->capture_default_str();
  cmd->add_option("--include-omega-c", c.omega_c,
                  "Re-add the cavity frequency shift N*omega_c to absolute energies");
}

void add_phase_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--eps-sf", c.eps_sf, "Superfluid threshold on d_n1/N")->capture_default_str();
  cmd->add_option("--eps-a", c.eps_a, "Atomic-fluctuation threshold on d_n1a")
      ->capture_default_str();
  cmd->add_option("--tol", c.tol, "Eigen-residual tolerance, relative to max(1,|E|)")
      ->capture_default_str();
}

void add_jobs_flag(CLI::App* cmd, Common& c) {
  cmd->add_option("--jobs,-j", c.jobs, "Worker threads (0 = hardware concurrency)")
      ->capture_default_str();
}

std::string num(double v) { return format_number(v); }

// ---------------------------------------------------------------------------

struct SolveArgs {
  int n = 0;
  double delta = 0.0;
  double hopping = 0.0;
  bool dump_state = false;
};

int cmd_solve(const SolveArgs& a, const Common& c, std::ostream& out) {
  if (a.n < 0) throw InputError("--n must be >= 0");
  const auto p = model_from(a.delta, a.hopping, c.lambda, c.omega_c);
  const auto opts = c.sweep_options();
  const Basis basis(a.n);
  const auto gs = ground_state(build_hamiltonian(p, basis), opts.solver);
  const auto rec = evaluate_point(p, a.n, opts);

  out << "N " << a.n << "  dim " << basis.dimension() << "  delta " << num(p.delta) << "  h "
      << num(p.hopping) << "  lambda " << num(p.lambda) << "  omega_c " << num(p.omega_c) << '\n';
  out << "energy         " << num(rec.energy) << '\n';
  out << "gap            " << num(rec.gap) << '\n';
  out << "degenerate     " << (rec.degenerate ? "yes" : "no") << '\n';
  out << "residual       " << num(gs.residual_norm) << '\n';
  out << "d_n1           " << num(rec.d_n1) << '\n';
  out << "d_n1/N         " << num(rec.d_n1_rel) << '\n';
  out << "d_n1a          " << num(rec.d_n1a) << '\n';
  out << "d_n1*d_n1a     " << num(rec.prod) << '\n';
  out << "d_n1/N*d_n1a   " << num(rec.prod_rel) << '\n';
  out << "P(N_A=0,1,2)   " << num(rec.p_na[0]) << ' ' << num(rec.p_na[1]) << ' '
      << num(rec.p_na[2]) << '\n';
  out << "phase          " << to_string(rec.phase) << '\n';

  out << "polariton levels (h=0), probability:\n";
  for (const auto& g : polariton_group_distribution(gs.vector, basis, p).groups) {
    if (g.probability < 1e-12 && g.label > 4) continue;
    out << "  Gamma_" << g.label << "  E=" << num(g.energy) << "  P=" << num(g.probability) << "  {";
    for (std::size_t i = 0; i < g.members.size(); ++i) out << (i ? " " : "") << g.members[i];
    out << "}\n";
  }

  if (a.dump_state) {
    out << "amplitudes (atom1 atom2 n1 n2 amplitude):\n";
    for (std::size_t i = 0; i < basis.dimension(); ++i) {
      const auto& s = basis[i];
      out << "  " << s.atom1 << ' ' << s.atom2 << ' ' << s.n1 << ' ' << s.n2 << ' '
          << num(gs.vector[i]) << '\n';
    }
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::string n = "4";
  std::string delta = "0";
  std::string hopping = "0";
  std::string out;
  std::string format = "csv";
};

int emit_records(const std::vector<SweepRecord>& records, const std::string& path,
                 const std::string& format, std::ostream& out) {
  const auto fmt = format_from(format);
  if (path.empty() || path == "-") {
    if (fmt == OutputFormat::csv) {
      write_csv(out, records);
    } else {
      write_json(out, records);
    }
  } else {
    write_output(records, fmt, path);
  }
  return count_failures(records) == 0 ? kSuccess : kNumericFailure;
}

int cmd_sweep(const SweepArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const GridSpec grid{parse_axis(a.delta), parse_axis(a.hopping), parse_n_values(a.n)};
  const auto records = run_sweep(grid, model_from(0.0, 0.0, c.lambda, c.omega_c), c.sweep_options());
  const int code = emit_records(records, a.out, a.format, out);
  if (code != kSuccess) err << "jch: " << count_failures(records) << " grid point(s) failed to solve\n";
  if (!a.out.empty() && a.out != "-") {
    err << "wrote " << records.size() << " records to " << a.out << '\n';
  }
  return code;
}

// ---------------------------------------------------------------------------

struct GapsArgs {
  std::string delta = "-1e6:1e6:401:log";
  std::string out;
};

int cmd_gaps(const GapsArgs& a, const Common& c, std::ostream& out) {
  const auto axis = parse_axis(a.delta);
  const auto rows = fig1_gap_table(axis.values, c.lambda);
  std::ofstream file;
  std::ostream* sink = &out;
  if (!a.out.empty() && a.out != "-") {
    file.open(a.out);
    if (!file) throw Error("cannot open '" + a.out + "' for writing");
    sink = &file;
  }
  *sink << "delta";
  for (int k = 1; k <= 7; ++k) *sink << ",gap" << k;
  *sink << '\n';
  for (const auto& r : rows) {
    *sink << num(r.delta);
    for (double s : r.spacings) *sink << ',' << num(s);
    *sink << '\n';
  }
  if (!*sink) throw Error("write failed");
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct Fig9Args {
  double hopping = 25.0;
  double delta = 1e4;
  std::string n = "2,4,...,30";
  std::string out;
  std::string format = "csv";
};

int cmd_fig9(const Fig9Args& a, const Common& c, std::ostream& out, std::ostream& err) {
  const auto ns = parse_n_values(a.n);
  const auto scan = fig9_scan(a.hopping, std::abs(a.delta), ns,
                              model_from(0.0, 0.0, c.lambda, c.omega_c), c.sweep_options());
  std::vector<SweepRecord> all = scan.positive.records;
  all.insert(all.end(), scan.negative.records.begin(), scan.negative.records.end());
  // Fits go to stderr when the records themselves stream to stdout.
  std::ostream& report = (a.out.empty() || a.out == "-") ? err : out;
  for (const auto* b : {&scan.positive, &scan.negative}) {
    report << "delta " << num(b->delta) << ": d_n1 = " << num(b->fit.slope) << " N + "
           << num(b->fit.intercept) << '\n';
  }
  return emit_records(all, a.out, a.format, out);
}

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::vector<std::string> only;
  int n_max = 30;
  int n_max_random = 12;
  std::uint64_t seed = 20140501;
  bool list = false;
  bool verbose = false;
};

int cmd_check(const CheckArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  if (a.list) {
    for (const auto& info : available_checks()) out << info.name << "  " << info.title << '\n';
    return kSuccess;
  }
  if (a.n_max < 4) throw InputError("--n-max must be >= 4");
  if (a.n_max_random < 2) throw InputError("--n-max-random must be >= 2");
  CheckOptions o;
  o.n_max = a.n_max;
  o.n_max_random = a.n_max_random;
  o.seed = a.seed;
  o.jobs = c.jobs;
  const auto results = run_checks(o, a.only);
  std::vector<std::string> failed;
  for (const auto& r : results) {
    out << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  max_dev " << num(r.max_deviation)
        << "  tol " << num(r.tolerance) << "  items " << r.items << '\n';
    if (!r.passed || a.verbose) out << "      worst: " << r.worst_item << '\n';
    for (const auto& f : r.failures) {
      if (f != r.worst_item) out << "      failed: " << f << '\n';
    }
    if (a.verbose) {
      for (const auto& n : r.notes) out << "      note: " << n << '\n';
    }
    if (!r.passed) failed.push_back(r.name);
  }
  if (failed.empty()) return kSuccess;
  err << "jch: failing checks:";
  for (const auto& f : failed) err << ' ' << f;
  err << '\n';
  return kCheckFailure;
}

}  // namespace

Axis parse_axis(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw InputError("empty grid specification");
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() < 3 || parts.size() > 4) {
      throw InputError("range must be min:max:count or min:max:count:log");
    }
    const double lo = to_double(parts[0]);
    const double hi = to_double(parts[1]);
    const auto count = to_count(parts[2]);
    if (parts.size() == 3) return Axis::linear(lo, hi, count);
    if (parts[3] != "log") throw InputError("unknown range scale '" + std::string(parts[3]) + "'");
    return Axis::log_signed(lo, hi, count);
  }
  return Axis::list(parse_list(text));
}

std::vector<int> parse_n_values(std::string_view text) {
  if (trim(text).empty()) throw InputError("empty excitation-number list");
  std::vector<int> out;
  for (double v : parse_list(text)) {
    if (v < 0.0 || v != std::floor(v) || v > 1e6) {
      throw InputError("excitation numbers must be non-negative integers");
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact diagonalization of the two-site Jaynes-Cummings-Hubbard model", "jch"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "jch 0.1.0");

  Common common;

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Ground state and observables at one point");
  solve->add_option("--n", solve_args.n, "Total excitation number")->capture_default_str();
  solve->add_option("--delta", solve_args.delta, "Detuning omega_a - omega_c")
      ->capture_default_str();
  solve->add_option("--hopping", solve_args.hopping, "Photon hopping h")->capture_default_str();
  solve->add_flag("--dump-state", solve_args.dump_state, "Print every ground-state amplitude");
  add_model_flags(solve, common);
  add_phase_flags(solve, common);

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Ground-state observables over a (N, h, delta) grid");
  sweep->add_option("--n", sweep_args.n, "Excitation numbers: list or a,b,...,c")
      ->capture_default_str();
  sweep->add_option("--delta", sweep_args.delta, "Detuning grid: min:max:count[:log] or list")
      ->capture_default_str();
  sweep->add_option("--hopping", sweep_args.hopping, "Hopping grid, same syntax")
      ->capture_default_str();
  sweep->add_option("--out,-o", sweep_args.out, "Output file (stdout when omitted)");
  sweep->add_option("--format", sweep_args.format, "csv or json")->capture_default_str();
  add_model_flags(sweep, common);
  add_phase_flags(sweep, common);
  add_jobs_flag(sweep, common);

  GapsArgs gaps_args;
  auto* gaps = app.add_subcommand("gaps", "N=4, h=0 level spacings against detuning");
  gaps->add_option("--delta", gaps_args.delta, "Detuning grid")->capture_default_str();
  gaps->add_option("--out,-o", gaps_args.out, "Output CSV (stdout when omitted)");
  gaps->add_option("--lambda", common.lambda, "Atom-cavity coupling")->capture_default_str();

  Fig9Args fig9_args;
  auto* fig9 = app.add_subcommand("fig9", "d_n1 against N at large positive and negative detuning");
  fig9->add_option("--hopping", fig9_args.hopping, "Photon hopping")->capture_default_str();
  fig9->add_option("--delta", fig9_args.delta, "Detuning magnitude")->capture_default_str();
  fig9->add_option("--n", fig9_args.n, "Excitation numbers")->capture_default_str();
  fig9->add_option("--out,-o", fig9_args.out, "Output file (stdout when omitted)");
  fig9->add_option("--format", fig9_args.format, "csv or json")->capture_default_str();
  add_model_flags(fig9, common);
  add_phase_flags(fig9, common);
  add_jobs_flag(fig9, common);

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Analytic oracles against the numerics");
  check->add_option("--only", check_args.only, "Run only the named check (repeatable)");
  check->add_option("--n-max", check_args.n_max, "Largest N in the N-scans")->capture_default_str();
  check->add_option("--n-max-random", check_args.n_max_random,
                    "Largest N in randomized property checks")
      ->capture_default_str();
  check->add_option("--seed", check_args.seed, "Seed for randomized checks")->capture_default_str();
  check->add_flag("--list", check_args.list, "List the available checks");
  check->add_flag("--verbose,-v", check_args.verbose, "Print notes and worst items");
  add_jobs_flag(check, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << "jch 0.1.0\n";
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "jch: " << e.what() << '\n';
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    } else {
      err << app.help();
    }
    return kUsageError;
  }

  try {
    if (*solve) return cmd_solve(solve_args, common, out);
    if (*sweep) return cmd_sweep(sweep_args, common, out, err);
    if (*gaps) return cmd_gaps(gaps_args, common, out);
    if (*fig9) return cmd_fig9(fig9_args, common, out, err);
    if (*check) return cmd_check(check_args, common, out, err);
  } catch (const InputError& e) {
    err << "jch: " << e.what() << '\n';
    return kUsageError;
  } catch (const NumericError& e) {
    err << "jch: numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const Error& e) {
    err << "jch: " << e.what() << '\n';
    return kNumericFailure;
  }
  return kUsageError;
}

}  // namespace jch::cli
