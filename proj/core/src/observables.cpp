#include "jch/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jch/errors.hpp"
#include "jch/linalg.hpp"

namespace jch {

namespace {

void require_unit(std::span<const double> state, const Basis& basis) {
  if (state.size() != basis.dimension()) {
    throw InputError("state length " + std::to_string(state.size()) +
                     " does not match basis dimension " + std::to_string(basis.dimension()));
  }
  const double nrm = norm2(state);
  if (!(std::abs(nrm - 1.0) <= 1e-8)) {
    throw InputError("state is not normalized (norm = " + std::to_string(nrm) + ")");
  }
}

}  // namespace

SiteMoments site_moments(std::span<const double> state, const Basis& basis, Site site) {
  require_unit(state, basis);
  double mean = 0.0;
  double second = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double p = state[i] * state[i];
    const double n = basis[i].site_excitation(site);
    mean += p * n;
    second += p * n * n;
  }
  SiteMoments m;
  m.mean_excitation = mean;
  // Rounding can push a zero variance slightly negative.
  m.variance = std::max(0.0, second - mean * mean);
  m.relative_variance = basis.n_total() > 0 ? m.variance / basis.n_total() : 0.0;
  return m;
}

AtomMoments atom_moments(std::span<const double> state, const Basis& basis, Site site) {
  require_unit(state, basis);
  double p = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (basis[i].atom(site) == 1) p += state[i] * state[i];
  }
  p = std::clamp(p, 0.0, 1.0);
  return AtomMoments{p, p * (1.0 - p)};
}

AtomicDistribution total_atomic_distribution(std::span<const double> state, const Basis& basis) {
  require_unit(state, basis);
  AtomicDistribution dist{};
  for (std::size_t i = 0; i < state.size(); ++i) {
    dist[static_cast<std::size_t>(basis[i].atomic_excitation())] += state[i] * state[i];
  }
  return dist;
}

GroupDistribution polariton_group_distribution(std::span<const double> state, const Basis& basis,
                                               const ModelParams& params) {
  require_unit(state, basis);
  auto levels = group_polariton_products(polariton_product_basis(basis, params),
                                         1e-9 * params.lambda);
  GroupDistribution out;
  out.groups.reserve(levels.size());
  int label = 1;
  for (const auto& level : levels) {
    GroupProbability g;
    g.label = label++;
    g.energy = level.energy;
    for (const auto& member : level.members) {
      const double overlap = dot(member.amplitudes, state);
      g.probability += overlap * overlap;
      g.members.push_back(member.label());
    }
    out.groups.push_back(std::move(g));
  }
  return out;
}

VarianceProduct variance_product(const SiteMoments& site, const AtomMoments& atom) {
  return VarianceProduct{site.variance * atom.variance, site.relative_variance * atom.variance};
}

}  // namespace jch
