#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "jch/analytic.hpp"
#include "jch/hilbert.hpp"
#include "jch/model.hpp"

namespace jch {

/// Moments of the local excitation number N_j = a_j^dagger a_j + |e_j><e_j|.
struct SiteMoments {
  double mean_excitation = 0.0;
  double variance = 0.0;           // <N_j^2> - <N_j>^2
  double relative_variance = 0.0;  // variance / N, 0 for N = 0
};

/// Excitation probability p of one atom and the variance p(1-p) of its
/// projector |e_j><e_j|.
struct AtomMoments {
  double excited_prob = 0.0;
  double variance = 0.0;
};

/// Probability of N_A = atom1 + atom2 = 0, 1, 2.
using AtomicDistribution = std::array<double, 3>;

/// Weight of a state on each degenerate h = 0 polariton level, levels in
/// ascending energy (label 1 is the lowest).
struct GroupProbability {
  int label = 0;
  double energy = 0.0;
  double probability = 0.0;
  std::vector<std::string> members;  // product labels such as "2-,2-"
};
struct GroupDistribution {
  std::vector<GroupProbability> groups;
};

struct VarianceProduct {
  double absolute = 0.0;  // d_n1 * d_n1a
  double relative = 0.0;  // (d_n1 / N) * d_n1a
};

// All functions below require a unit-norm real vector over `basis` and throw
// InputError when its norm is off by more than 1e-8 or its length is wrong.

[[nodiscard]] SiteMoments site_moments(std::span<const double> state, const Basis& basis,
                                       Site site);
[[nodiscard]] AtomMoments atom_moments(std::span<const double> state, const Basis& basis,
                                       Site site);
[[nodiscard]] AtomicDistribution total_atomic_distribution(std::span<const double> state,
                                                           const Basis& basis);

/// Energy clustering tolerance for the h = 0 levels: 1e-9 lambda.
[[nodiscard]] GroupDistribution polariton_group_distribution(std::span<const double> state,
                                                             const Basis& basis,
                                                             const ModelParams& params);

[[nodiscard]] VarianceProduct variance_product(const SiteMoments& site, const AtomMoments& atom);

}  // namespace jch
