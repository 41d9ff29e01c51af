#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "jch/linalg.hpp"
#include "jch/model.hpp"

namespace jch {

/// Eigenpairs in ascending order. Column i of `vectors` belongs to values[i].
struct EigenResult {
  std::vector<double> values;
  DenseMatrix vectors;
  std::vector<double> residual_norms;  // ||H v - E v|| per pair

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
  [[nodiscard]] std::vector<double> vector(std::size_t i) const { return vectors.column(i); }
};

/// Lowest eigenpair of a fixed-N block.
struct GroundState {
  double energy = 0.0;
  std::vector<double> vector;  // unit norm, first significant amplitude positive
  bool degenerate = false;     // E1 - E0 below the degeneracy tolerance
  double gap_to_first_excited = 0.0;  // +inf for a one-dimensional block
  double residual_norm = 0.0;
};

struct SolverOptions {
  double tol = 1e-10;                 // residual tolerance, relative to max(1, |E|max)
  std::size_t dense_threshold = 512;  // dim <= threshold uses the dense path
  std::uint64_t seed = 0x5eed1a7c20140501ULL;  // Lanczos start vector
};

/// Degeneracy threshold applied to E1 - E0: 1e-9 * max(1, spectral width).
[[nodiscard]] double degeneracy_tolerance(double spectral_width) noexcept;

/// Flips the sign of `v` so that its first amplitude above 1e-10 * max|v_i|
/// is positive.
void fix_phase(std::span<double> v);

/// All eigenpairs by dense tridiagonalization + implicit QL. Residuals are
/// checked against tol * max(1, |E|max); throws NumericError otherwise.
[[nodiscard]] EigenResult full_spectrum(const SparseHamiltonian& h, double tol = 1e-10);

/// The k lowest pairs by Lanczos with full reorthogonalization, regardless
/// of dimension. A single start vector only resolves one member of each
/// degenerate eigenspace until the Krylov space is exhausted (restarts on
/// breakdown then pick up the rest), so multiplicities beyond one are only
/// guaranteed when the iteration runs to the full dimension.
[[nodiscard]] EigenResult lanczos_lowest(const SparseHamiltonian& h, std::size_t k,
                                         const SolverOptions& options = {});

/// The k lowest pairs; dense path for dim <= dense_threshold, Lanczos above.
[[nodiscard]] EigenResult lowest_k(const SparseHamiltonian& h, std::size_t k,
                                   const SolverOptions& options = {});

[[nodiscard]] GroundState ground_state(const SparseHamiltonian& h,
                                       const SolverOptions& options = {});

}  // namespace jch
