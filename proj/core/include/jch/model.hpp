#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "jch/hilbert.hpp"
#include "jch/linalg.hpp"

namespace jch {

/// Parameters of the two-site Jaynes-Cummings-Hubbard Hamiltonian, all in
/// units of the atom-field coupling.
///
/// omega_c only contributes the constant N * omega_c inside a fixed-N block,
/// so it defaults to zero and energies are reported relative to that shift.
/// A negative hopping is allowed; it swaps the roles of the symmetric and
/// antisymmetric photon modes (a2 -> -a2 maps h to -h).
struct ModelParams {
  double omega_c = 0.0;
  double delta = 0.0;    // omega_a - omega_c
  double lambda = 1.0;   // atom-field coupling
  double hopping = 0.0;  // photon tunnelling between the cavities

  [[nodiscard]] double omega_a() const noexcept { return omega_c + delta; }

  /// Throws InputError unless lambda >= 0 and every field is finite.
  void validate() const;
};

/// One stored matrix element; row <= col.
struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// Real symmetric Hamiltonian restricted to one fixed-N basis. Only the upper
/// triangle is stored; products apply both halves.
class SparseHamiltonian {
 public:
  SparseHamiltonian(Basis basis, std::vector<Triplet> entries);

  [[nodiscard]] std::size_t dim() const noexcept { return basis_.dimension(); }
  [[nodiscard]] const Basis& basis() const noexcept { return basis_; }
  [[nodiscard]] std::span<const Triplet> entries() const noexcept { return entries_; }

  /// y = H x. Throws InputError on length mismatch.
  void apply(std::span<const double> x, std::span<double> y) const;
  [[nodiscard]] std::vector<double> apply(std::span<const double> x) const;

  /// <x|H|x>
  [[nodiscard]] double expectation(std::span<const double> x) const;

  [[nodiscard]] DenseMatrix to_dense() const;

  /// Upper bound on the spectral radius (max absolute row sum).
  [[nodiscard]] double norm_bound() const;

 private:
  Basis basis_;
  std::vector<Triplet> entries_;
};

/// Matrix elements of the Hamiltonian over an arbitrary list of states,
/// located via a map lookup. Used to audit excitation-number conservation
/// over merged blocks; the fixed-N builder below is the production path.
[[nodiscard]] std::vector<Triplet> build_triplets(const ModelParams& params,
                                                  std::span<const BasisState> states);

[[nodiscard]] SparseHamiltonian build_hamiltonian(const ModelParams& params, const Basis& basis);

[[nodiscard]] std::vector<double> apply_hamiltonian(const SparseHamiltonian& h,
                                                    std::span<const double> v);

/// Text dump: a `# dim <d> nnz <k>` header then one `row col value` line per
/// stored entry, values with 17 significant digits.
void write_triplets(std::ostream& out, const SparseHamiltonian& h);

}  // namespace jch
