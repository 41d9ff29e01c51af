#include "jch/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "jch/errors.hpp"
#include "jch/linalg.hpp"
#include "jch/solver.hpp"

namespace jch {

namespace {

// sqrt(delta^2 + 4 n lambda^2)
double rabi(int n, const ModelParams& p) {
  return std::hypot(p.delta, 2.0 * p.lambda * std::sqrt(static_cast<double>(n)));
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// Amplitudes of (b^dagger)^m / sqrt(m!) |0,0> on |m-k, k>, k = 0..m, where b
// is the lower photon mode for the given hopping sign.
std::vector<double> delocalized_photons(int m, int hopping_sign) {
  std::vector<double> c(static_cast<std::size_t>(m) + 1);
  const double norm = std::pow(2.0, -0.5 * m);
  for (int k = 0; k <= m; ++k) {
    const double sign = (hopping_sign >= 0 && k % 2 == 1) ? -1.0 : 1.0;
    c[static_cast<std::size_t>(k)] = sign * std::sqrt(binomial(m, k)) * norm;
  }
  return c;
}

// Places |atom1, atom2> (x) sum_k c_k |m-k, k> into the basis.
std::vector<double> embed(const Basis& basis, int atom1, int atom2,
                          const std::vector<double>& photons) {
  std::vector<double> amps(basis.dimension(), 0.0);
  const int m = static_cast<int>(photons.size()) - 1;
  for (int k = 0; k <= m; ++k) {
    amps[basis.index_of(BasisState{atom1, atom2, m - k, k})] = photons[static_cast<std::size_t>(k)];
  }
  return amps;
}

AnalyticState make_state(std::string label, std::vector<double> amps) {
  fix_phase(amps);
  return AnalyticState{std::move(label), std::move(amps)};
}

}  // namespace

double mixing_angle(int n, const ModelParams& p) {
  return std::atan2(2.0 * p.lambda * std::sqrt(static_cast<double>(n)), p.delta);
}

double polariton_energy(int n, Branch branch, const ModelParams& p) {
  if (n < 0) throw InputError("polariton_energy: negative excitation number");
  if (n == 0) return 0.0;
  const double r = rabi(n, p);
  const double coupling2 = 4.0 * n * p.lambda * p.lambda;
  double e = 0.0;
  if (branch == Branch::minus) {
    e = p.delta > 0.0 ? -0.5 * coupling2 / (p.delta + r) : 0.5 * (p.delta - r);
  } else {
    e = p.delta < 0.0 ? 0.5 * coupling2 / (r - p.delta) : 0.5 * (p.delta + r);
  }
  return n * p.omega_c + e;
}

PolaritonLevel polariton_level(int n, Branch branch, const ModelParams& p) {
  PolaritonLevel level;
  level.n = n;
  level.branch = branch;
  level.energy = polariton_energy(n, branch, p);
  if (n == 0) return level;
  level.theta = mixing_angle(n, p);
  const double s = std::sin(0.5 * level.theta);
  const double c = std::cos(0.5 * level.theta);
  if (branch == Branch::minus) {
    level.excited_amplitude = s;
    level.ground_amplitude = -c;
  } else {
    level.excited_amplitude = c;
    level.ground_amplitude = s;
  }
  return level;
}

std::string PolaritonProduct::label() const {
  auto one = [](const PolaritonLevel& l) {
    std::string s = std::to_string(l.n);
    if (l.n > 0) s += l.branch == Branch::minus ? '-' : '+';
    return s;
  };
  return one(site1) + "," + one(site2);
}

std::vector<PolaritonProduct> polariton_product_basis(const Basis& basis,
                                                      const ModelParams& params) {
  const int n_total = basis.n_total();
  std::vector<PolaritonProduct> out;
  out.reserve(basis.dimension());

  // (atom, photons, amplitude) components of a single-site level.
  struct Component {
    int atom;
    int photons;
    double amp;
  };
  auto components = [](const PolaritonLevel& l) {
    std::vector<Component> c;
    if (l.n == 0) {
      c.push_back({0, 0, 1.0});
    } else {
      c.push_back({1, l.n - 1, l.excited_amplitude});
      c.push_back({0, l.n, l.ground_amplitude});
    }
    return c;
  };

  for (int n1 = 0; n1 <= n_total; ++n1) {
    const int n2 = n_total - n1;
    for (Branch b1 : {Branch::minus, Branch::plus}) {
      if (n1 == 0 && b1 == Branch::plus) continue;
      for (Branch b2 : {Branch::minus, Branch::plus}) {
        if (n2 == 0 && b2 == Branch::plus) continue;
        PolaritonProduct p;
        p.site1 = polariton_level(n1, b1, params);
        p.site2 = polariton_level(n2, b2, params);
        p.energy = p.site1.energy + p.site2.energy;
        p.amplitudes.assign(basis.dimension(), 0.0);
        for (const auto& c1 : components(p.site1)) {
          for (const auto& c2 : components(p.site2)) {
            p.amplitudes[basis.index_of(BasisState{c1.atom, c2.atom, c1.photons, c2.photons})] +=
                c1.amp * c2.amp;
          }
        }
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

std::vector<PolaritonGroup> group_polariton_products(std::vector<PolaritonProduct> products,
                                                     double tolerance) {
  std::stable_sort(products.begin(), products.end(),
                   [](const auto& a, const auto& b) { return a.energy < b.energy; });
  std::vector<PolaritonGroup> groups;
  for (auto& p : products) {
    if (groups.empty() || p.energy - groups.back().members.back().energy > tolerance) {
      groups.push_back(PolaritonGroup{p.energy, {}});
    }
    groups.back().members.push_back(std::move(p));
  }
  for (auto& g : groups) {
    double sum = 0.0;
    for (const auto& m : g.members) sum += m.energy;
    g.energy = sum / static_cast<double>(g.members.size());
  }
  return groups;
}

double gap_lowest_two(const ModelParams& params) { return n4_level_spacings(params)[0]; }

double gap_lowest_two_general(int n_total, double lambda) {
  if (n_total < 4 || n_total % 2 != 0) {
    throw InputError("gap_lowest_two_general: N must be even and >= 4, got " +
                     std::to_string(n_total));
  }
  // 2 sqrt(n) - sqrt(n-1) - sqrt(n+1) rewritten without cancellation.
  const double n = 0.5 * n_total;
  const double a = std::sqrt(n - 1.0);
  const double b = std::sqrt(n);
  const double c = std::sqrt(n + 1.0);
  return 2.0 * lambda / ((a + b) * (b + c) * (a + c));
}

double gap_lowest_two_total_n_form(int n_total, double lambda) {
  if (n_total < 4 || n_total % 2 != 0) {
    throw InputError("gap_lowest_two_total_n_form: N must be even and >= 4");
  }
  const double n = n_total;
  return (2.0 * std::sqrt(n) - std::sqrt(n - 1.0) - std::sqrt(n + 1.0)) * lambda;
}

AnalyticState photonic_ground_state(const Basis& basis, int hopping_sign) {
  const int n = basis.n_total();
  return make_state("photonic-superfluid N=" + std::to_string(n),
                    embed(basis, 0, 0, delocalized_photons(n, hopping_sign)));
}

AnalyticState coexisting_state_limit(const Basis& basis, int hopping_sign) {
  const int n = basis.n_total();
  if (n < 2) throw InputError("coexisting_state_limit: needs N >= 2");
  return make_state("coexisting N=" + std::to_string(n),
                    embed(basis, 1, 1, delocalized_photons(n - 2, hopping_sign)));
}

std::array<AnalyticState, 4> perturbative_states_n4(const Basis& basis, int hopping_sign) {
  if (basis.n_total() != 4) throw InputError("perturbative_states_n4: basis must have N = 4");
  const auto three = delocalized_photons(3, hopping_sign);
  return {
      make_state("phi_co", embed(basis, 1, 1, delocalized_photons(2, hopping_sign))),
      make_state("phi_ps", embed(basis, 0, 0, delocalized_photons(4, hopping_sign))),
      make_state("phi_1", embed(basis, 1, 0, three)),
      make_state("phi_2", embed(basis, 0, 1, three)),
  };
}

double limit_variance(int n_total, int detuning_sign) {
  if (n_total < 0) throw InputError("limit_variance: negative N");
  if (detuning_sign < 0) {
    if (n_total < 2) throw InputError("limit_variance: negative-detuning branch needs N >= 2");
    return (n_total - 2) / 4.0;
  }
  return n_total / 4.0;
}

ModeEnergy hph_ground_energy(int n_total, const ModelParams& params) {
  if (n_total < 0) throw InputError("hph_ground_energy: negative N");
  return ModeEnergy{n_total * (params.omega_c - std::abs(params.hopping)), params.hopping <= 0.0};
}

double zero_coupling_ground_energy(int n_total, const ModelParams& params) {
  if (n_total < 0) throw InputError("zero_coupling_ground_energy: negative N");
  const double h = std::abs(params.hopping);
  double best = n_total * params.omega_c - n_total * h;
  for (int m = 1; m <= std::min(2, n_total); ++m) {
    best = std::min(best, n_total * params.omega_c + m * params.delta - (n_total - m) * h);
  }
  return best;
}

std::array<double, 8> n4_level_energies(const ModelParams& p) {
  auto e = [&](int n, Branch b) { return polariton_energy(n, b, p); };
  constexpr auto m = Branch::minus;
  constexpr auto q = Branch::plus;
  return {
      e(2, m) + e(2, m), e(1, m) + e(3, m), e(0, m) + e(4, m), e(1, q) + e(3, m),
      e(2, q) + e(2, m), e(3, q) + e(1, m), e(4, q) + e(0, m), e(2, q) + e(2, q),
  };
}

std::array<double, 7> n4_level_spacings(const ModelParams& p) {
  const double d = p.delta;
  const double l2 = p.lambda * p.lambda;
  const double f0 = std::abs(d);
  const double f1 = rabi(1, p);
  const double f2 = rabi(2, p);
  const double f3 = rabi(3, p);
  const double f4 = rabi(4, p);
  // delta + f4 and f4 - delta, whichever side cancels is rewritten.
  const double d_plus_f4 = d >= 0.0 ? d + f4 : 16.0 * l2 / (f4 + f0);
  const double f4_minus_d = d <= 0.0 ? f4 - d : 16.0 * l2 / (f4 + f0);
  const double d_plus_f2 = d >= 0.0 ? d + f2 : 8.0 * l2 / (f2 + f0);
  const double f3_minus_f1 = 8.0 * l2 / (f3 + f1);

  std::array<double, 7> s{};
  s[0] = 16.0 * l2 * l2 / ((f3 + f1) * (f2 + f1) * (f3 + f2));
  if (d >= 0.0) {
    // (f1 - f0) - (f4 - f3)
    s[1] = 0.5 * (4.0 * l2 / (f1 + f0) - 4.0 * l2 / (f4 + f3));
  } else {
    s[1] = 0.5 * (f1 + f0 - 4.0 * l2 / (f3 + f4));
  }
  s[2] = 0.5 * (d_plus_f4 - f3_minus_f1);
  s[3] = 0.5 * f3_minus_f1;
  s[4] = 0.5 * f3_minus_f1;
  s[5] = 0.5 * (f4_minus_d - f3_minus_f1);
  s[6] = 0.5 * (d_plus_f2 - 8.0 * l2 / (f2 + f4));
  return s;
}

std::vector<LevelSpacingRow> fig1_gap_table(std::span<const double> deltas, double lambda) {
  std::vector<LevelSpacingRow> rows;
  rows.reserve(deltas.size());
  for (double d : deltas) {
    ModelParams p;
    p.delta = d;
    p.lambda = lambda;
    rows.push_back(LevelSpacingRow{d, n4_level_spacings(p)});
  }
  return rows;
}

double fidelity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("fidelity: vector lengths differ");
  const double o = dot(a, b);
  return o * o;
}

}  // namespace jch
