#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "jch/hilbert.hpp"
#include "jch/model.hpp"

namespace jch {

enum class Branch { minus, plus };

/// Single-site dressed state |n^-> or |n^+> (or the vacuum |g,0> for n = 0)
/// in the uncoupled-site limit h = 0.
///
///   |n^-> = sin(theta/2) |e, n-1> - cos(theta/2) |g, n>
///   |n^+> = cos(theta/2) |e, n-1> + sin(theta/2) |g, n>
///
/// with theta = atan2(2 lambda sqrt(n), delta) in (0, pi), so |n^-> is always
/// the lower level and the states vary continuously through resonance.
struct PolaritonLevel {
  int n = 0;
  Branch branch = Branch::minus;
  double energy = 0.0;
  double theta = 0.0;
  double excited_amplitude = 0.0;  // on |e, n-1>
  double ground_amplitude = 1.0;   // on |g, n>
};

[[nodiscard]] double mixing_angle(int n, const ModelParams& params);

/// E^{n-/+} = n omega_c + delta/2 -/+ sqrt(delta^2 + 4 n lambda^2)/2, and 0
/// for n = 0. Evaluated without cancellation for |delta| >> lambda.
/// Throws InputError for negative n.
[[nodiscard]] double polariton_energy(int n, Branch branch, const ModelParams& params);

[[nodiscard]] PolaritonLevel polariton_level(int n, Branch branch, const ModelParams& params);

/// Product |n1^s1> (x) |n2^s2> expanded over a fixed-N basis.
struct PolaritonProduct {
  PolaritonLevel site1;
  PolaritonLevel site2;
  double energy = 0.0;
  std::vector<double> amplitudes;

  /// e.g. "2-,2-" or "0,4+"
  [[nodiscard]] std::string label() const;
};

/// All 4N (1 for N = 0) polariton product states with total excitation N.
/// They form an orthonormal basis of the block.
[[nodiscard]] std::vector<PolaritonProduct> polariton_product_basis(const Basis& basis,
                                                                    const ModelParams& params);

/// Products grouped into degenerate h = 0 levels, ascending. Consecutive
/// energies closer than `tolerance` share a group.
struct PolaritonGroup {
  double energy = 0.0;
  std::vector<PolaritonProduct> members;
};
[[nodiscard]] std::vector<PolaritonGroup> group_polariton_products(
    std::vector<PolaritonProduct> products, double tolerance);

/// Gap between the two lowest h = 0 levels for N = 4:
/// |sqrt(d^2+12l^2) - 2 sqrt(d^2+8l^2) + sqrt(d^2+4l^2)| / 2.
[[nodiscard]] double gap_lowest_two(const ModelParams& params);

/// h = 0, delta = 0 gap for even N >= 4 in terms of the per-site excitation
/// n = N/2: (2 sqrt(n) - sqrt(n-1) - sqrt(n+1)) lambda.
/// Throws InputError for odd N or N < 4.
[[nodiscard]] double gap_lowest_two_general(int n_total, double lambda);

/// The same expression written in the total N, (2 sqrt(N) - sqrt(N-1) -
/// sqrt(N+1)) lambda. It does not reproduce the N = 4 gap and is kept only
/// so the mismatch can be reported next to the numerics.
[[nodiscard]] double gap_lowest_two_total_n_form(int n_total, double lambda);

/// Named amplitude vector over a fixed-N basis (unit norm, solver phase
/// convention).
struct AnalyticState {
  std::string label;
  std::vector<double> amplitudes;
};

/// (b_-^dagger)^N / sqrt(N!) |0,0> with b_-/+ = (a1 -/+ a2)/sqrt(2), both
/// atoms in the ground state. hopping_sign < 0 selects b_+ instead, which is
/// the lower photon mode when h < 0.
[[nodiscard]] AnalyticState photonic_ground_state(const Basis& basis, int hopping_sign = +1);

/// Both atoms excited with the remaining N-2 photons in the lower
/// delocalized mode. Throws InputError for N < 2.
[[nodiscard]] AnalyticState coexisting_state_limit(const Basis& basis, int hopping_sign = +1);

/// The four degenerate lambda = 0 ground states at h = -delta for N = 4:
/// coexisting, photonic superfluid, and one atom excited on site 1 or site 2
/// with three photons in the lower mode. Throws InputError unless N = 4.
[[nodiscard]] std::array<AnalyticState, 4> perturbative_states_n4(const Basis& basis,
                                                                  int hopping_sign = +1);

/// Large-detuning single-site variance: N/4 for delta -> +inf, (N-2)/4 for
/// delta -> -inf. Throws InputError for N < 2 on the negative branch.
[[nodiscard]] double limit_variance(int n_total, int detuning_sign);

struct ModeEnergy {
  double energy = 0.0;
  bool hopping_nonpositive = false;  // h <= 0: b_+ is the occupied mode
};

/// Lowest eigenvalue N (omega_c - |h|) of the decoupled photon Hamiltonian.
[[nodiscard]] ModeEnergy hph_ground_energy(int n_total, const ModelParams& params);

/// Exact lambda = 0 ground energy: min over m excited atoms of
/// N omega_c + m delta - (N - m)|h|.
[[nodiscard]] double zero_coupling_ground_energy(int n_total, const ModelParams& params);

/// h = 0 energies of the eight N = 4 levels, each a sum of two single-site
/// energies, in the parameter-independent order
/// {2-2-}, {1-3-}, {0 4-}, {1+3-}, {2+2-}, {3+1-}, {4+0}, {2+2+}.
[[nodiscard]] std::array<double, 8> n4_level_energies(const ModelParams& params);

/// The seven consecutive differences of n4_level_energies, each evaluated in
/// a cancellation-free form so the sign survives at any detuning.
[[nodiscard]] std::array<double, 7> n4_level_spacings(const ModelParams& params);

struct LevelSpacingRow {
  double delta = 0.0;
  std::array<double, 7> spacings{};
};
[[nodiscard]] std::vector<LevelSpacingRow> fig1_gap_table(std::span<const double> deltas,
                                                          double lambda = 1.0);

/// |<a|b>|^2 for real amplitude vectors.
[[nodiscard]] double fidelity(std::span<const double> a, std::span<const double> b);

}  // namespace jch
