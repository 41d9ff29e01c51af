#include "jch/hilbert.hpp"

#include <string>

#include "jch/errors.hpp"

namespace jch {

namespace {

// Offset of the (atom1, atom2) run inside the canonical order.
std::size_t run_offset(int n_total, int atom1, int atom2) {
  const auto n = static_cast<std::size_t>(n_total);
  if (atom1 == 0 && atom2 == 0) return 0;
  if (atom1 == 0) return n + 1;
  if (atom2 == 0) return 2 * n + 1;
  return 3 * n + 1;
}

}  // namespace

std::size_t basis_dimension(int n_total) {
  if (n_total < 0) throw InputError("basis_dimension: negative excitation number");
  return n_total == 0 ? 1 : 4 * static_cast<std::size_t>(n_total);
}

Basis::Basis(int n_total) : n_total_(n_total) {
  if (n_total < 0) {
    throw InputError("Basis: total excitation number must be non-negative, got " +
                     std::to_string(n_total));
  }
  states_.reserve(basis_dimension(n_total));
  for (int a1 = 0; a1 <= 1; ++a1) {
    for (int a2 = 0; a2 <= 1; ++a2) {
      const int photons = n_total - a1 - a2;
      for (int n1 = 0; n1 <= photons; ++n1) {
        states_.push_back(BasisState{a1, a2, n1, photons - n1});
      }
    }
  }
}

std::optional<std::size_t> Basis::find(const BasisState& s) const noexcept {
  if ((s.atom1 != 0 && s.atom1 != 1) || (s.atom2 != 0 && s.atom2 != 1)) return std::nullopt;
  if (s.n1 < 0 || s.n2 < 0) return std::nullopt;
  if (s.total_excitation() != n_total_) return std::nullopt;
  return run_offset(n_total_, s.atom1, s.atom2) + static_cast<std::size_t>(s.n1);
}

std::size_t Basis::index_of(const BasisState& s) const {
  if (auto i = find(s)) return *i;
  throw LookupError("state (" + std::to_string(s.atom1) + "," + std::to_string(s.atom2) + "," +
                    std::to_string(s.n1) + "," + std::to_string(s.n2) +
                    ") is not in the N=" + std::to_string(n_total_) + " basis");
}

Basis enumerate_basis(int n_total) { return Basis(n_total); }

}  // namespace jch
