#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace jch {

/// Lattice site label. The model has exactly two sites.
enum class Site { first = 1, second = 2 };

/// One configuration of the two-site system: atomic excitation flags and
/// photon occupation of each cavity mode.
struct BasisState {
  int atom1 = 0;  // 0 = ground, 1 = excited
  int atom2 = 0;
  int n1 = 0;     // photons in mode 1
  int n2 = 0;     // photons in mode 2

  [[nodiscard]] int total_excitation() const noexcept { return atom1 + atom2 + n1 + n2; }
  [[nodiscard]] int atom(Site s) const noexcept { return s == Site::first ? atom1 : atom2; }
  [[nodiscard]] int photons(Site s) const noexcept { return s == Site::first ? n1 : n2; }
  /// Local excitation number n_j + atom_j on the given site.
  [[nodiscard]] int site_excitation(Site s) const noexcept { return atom(s) + photons(s); }
  [[nodiscard]] int atomic_excitation() const noexcept { return atom1 + atom2; }

  friend bool operator==(const BasisState&, const BasisState&) = default;
};

/// Number of states with total excitation n_total: 4N for N >= 1, 1 for N = 0.
[[nodiscard]] std::size_t basis_dimension(int n_total);

/// The fixed-excitation block of the two-site Hilbert space.
///
/// States are ordered lexicographically on (atom1, atom2, n1); n2 is implied
/// by the excitation sum. For N >= 1 this gives four contiguous runs:
///
///   (0,0,n1)  n1 = 0..N     offset 0
///   (0,1,n1)  n1 = 0..N-1   offset N+1
///   (1,0,n1)  n1 = 0..N-1   offset 2N+1
///   (1,1,n1)  n1 = 0..N-2   offset 3N+1
///
/// so index lookup is pure arithmetic. The basis is immutable once built.
class Basis {
 public:
  /// Throws InputError for negative n_total.
  explicit Basis(int n_total);

  [[nodiscard]] int n_total() const noexcept { return n_total_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return states_.size(); }
  [[nodiscard]] std::span<const BasisState> states() const noexcept { return states_; }
  [[nodiscard]] const BasisState& operator[](std::size_t i) const { return states_[i]; }

  /// Position of `state`, or nullopt when it is not a member.
  [[nodiscard]] std::optional<std::size_t> find(const BasisState& state) const noexcept;

  /// Position of `state`; throws LookupError when it is not a member.
  [[nodiscard]] std::size_t index_of(const BasisState& state) const;

 private:
  int n_total_;
  std::vector<BasisState> states_;
};

/// Builds the canonical basis for the given total excitation number.
[[nodiscard]] Basis enumerate_basis(int n_total);

}  // namespace jch
