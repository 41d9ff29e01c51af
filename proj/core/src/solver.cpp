#include "jch/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "jch/errors.hpp"

namespace jch {

double degeneracy_tolerance(double spectral_width) noexcept {
  return 1e-9 * std::max(1.0, spectral_width);
}

void fix_phase(std::span<double> v) {
  double largest = 0.0;
  for (double a : v) largest = std::max(largest, std::abs(a));
  if (largest == 0.0) return;
  for (double a : v) {
    if (std::abs(a) > 1e-10 * largest) {
      if (a < 0.0) scale(-1.0, v);
      return;
    }
  }
}

namespace {

double residual(const SparseHamiltonian& h, std::span<const double> v, double e) {
  auto hv = h.apply(v);
  axpy(-e, v, hv);
  return norm2(hv);
}

double spectral_scale(std::span<const double> values) {
  double emax = 1.0;
  for (double e : values) emax = std::max(emax, std::abs(e));
  return emax;
}

// Normalizes, phase-fixes and measures residuals; enforces the bound.
void finalize(const SparseHamiltonian& h, EigenResult& r, double bound, const char* who) {
  r.residual_norms.assign(r.values.size(), 0.0);
  std::vector<double> v(h.dim());
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    for (std::size_t row = 0; row < h.dim(); ++row) v[row] = r.vectors(row, i);
    const double nrm = norm2(v);
    if (nrm == 0.0) throw NumericError(std::string(who) + ": zero eigenvector");
    scale(1.0 / nrm, v);
    fix_phase(v);
    r.vectors.set_column(i, v);
    r.residual_norms[i] = residual(h, v, r.values[i]);
    if (!(r.residual_norms[i] <= bound)) {
      throw NumericError(std::string(who) + ": residual " + std::to_string(r.residual_norms[i]) +
                         " for eigenvalue " + std::to_string(r.values[i]) +
                         " exceeds tolerance " + std::to_string(bound));
    }
  }
}

EigenResult truncate(EigenResult r, std::size_t k) {
  if (k >= r.values.size()) return r;
  EigenResult out;
  out.values.assign(r.values.begin(), r.values.begin() + static_cast<std::ptrdiff_t>(k));
  out.vectors = DenseMatrix(r.vectors.rows(), k);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t row = 0; row < r.vectors.rows(); ++row) out.vectors(row, c) = r.vectors(row, c);
  }
  out.residual_norms.assign(r.residual_norms.begin(),
                            r.residual_norms.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

// Classical Gram-Schmidt against every Krylov vector, applied twice.
void reorthogonalize(const std::vector<std::vector<double>>& krylov, std::vector<double>& w) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : krylov) axpy(-dot(q, w), q, w);
  }
}

std::vector<double> random_unit(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = normal(rng);
  scale(1.0 / norm2(v), v);
  return v;
}

}  // namespace

EigenResult full_spectrum(const SparseHamiltonian& h, double tol) {
  if (h.dim() == 0) throw InputError("full_spectrum: empty Hamiltonian");
  auto eig = symmetric_eigen(h.to_dense(), true);
  EigenResult r{std::move(eig.values), std::move(eig.vectors), {}};
  finalize(h, r, tol * spectral_scale(r.values), "full_spectrum");
  return r;
}

EigenResult lanczos_lowest(const SparseHamiltonian& h, std::size_t k,
                           const SolverOptions& options) {
  const std::size_t n = h.dim();
  if (k < 1 || k > n) {
    throw InputError("lanczos_lowest: k=" + std::to_string(k) + " outside [1, " +
                     std::to_string(n) + "]");
  }
  const double scale_hint = std::max(1.0, h.norm_bound());
  const double breakdown = 1e-12 * scale_hint;

  std::mt19937_64 rng(options.seed);
  std::vector<std::vector<double>> krylov;
  krylov.reserve(std::min<std::size_t>(n, 256));
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[j] couples Krylov vectors j and j+1

  krylov.push_back(random_unit(n, rng));
  std::vector<double> w(n);
  SymmetricEigen ritz;
  double bound = options.tol;

  for (std::size_t j = 0; j < n; ++j) {
    h.apply(krylov[j], w);
    alpha.push_back(dot(krylov[j], w));
    reorthogonalize(krylov, w);
    double b = norm2(w);

    const std::size_t m = alpha.size();
    // The small eigenproblem costs O(m^3); past the first few dozen steps
    // only look for convergence every tenth step.
    const bool probe = m == n || b <= breakdown || (m >= k && (m < 40 || m % 10 == 0));
    if (probe) {
      ritz = tridiagonal_eigen(alpha, beta, true);
      bound = options.tol * spectral_scale(std::array{ritz.values.front(), ritz.values.back()});
      if (m == n) break;
      bool converged = m >= k;
      for (std::size_t i = 0; i < k && converged; ++i) {
        converged = std::abs(b * ritz.vectors(m - 1, i)) <= 0.1 * bound;
      }
      if (converged) break;
    }

    if (b <= breakdown) {
      // Invariant subspace found; continue with a fresh direction.
      std::vector<double> fresh;
      for (int attempt = 0; attempt < 8; ++attempt) {
        fresh = random_unit(n, rng);
        reorthogonalize(krylov, fresh);
        const double f = norm2(fresh);
        if (f > 1e-8) {
          scale(1.0 / f, fresh);
          break;
        }
        fresh.clear();
      }
      if (fresh.empty()) break;
      beta.push_back(0.0);
      krylov.push_back(std::move(fresh));
    } else {
      beta.push_back(b);
      scale(1.0 / b, w);
      krylov.push_back(w);
    }
  }

  const std::size_t m = alpha.size();
  if (ritz.values.size() != m) {
    ritz = tridiagonal_eigen(alpha, beta, true);
    bound = options.tol * spectral_scale(std::array{ritz.values.front(), ritz.values.back()});
  }
  if (m < k) {
    throw NumericError("lanczos_lowest: Krylov space of dimension " + std::to_string(m) +
                       " cannot supply " + std::to_string(k) + " eigenpairs");
  }
  EigenResult r;
  r.values.assign(ritz.values.begin(), ritz.values.begin() + static_cast<std::ptrdiff_t>(k));
  r.vectors = DenseMatrix(n, k);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> v(n, 0.0);
    for (std::size_t j = 0; j < m; ++j) axpy(ritz.vectors(j, i), krylov[j], v);
    r.vectors.set_column(i, v);
  }
  finalize(h, r, bound, "lanczos_lowest");
  return r;
}

EigenResult lowest_k(const SparseHamiltonian& h, std::size_t k, const SolverOptions& options) {
  if (k < 1 || k > h.dim()) {
    throw InputError("lowest_k: k=" + std::to_string(k) + " outside [1, " +
                     std::to_string(h.dim()) + "]");
  }
  if (h.dim() <= options.dense_threshold) return truncate(full_spectrum(h, options.tol), k);
  return lanczos_lowest(h, k, options);
}

GroundState ground_state(const SparseHamiltonian& h, const SolverOptions& options) {
  if (h.dim() == 0) throw InputError("ground_state: empty Hamiltonian");
  GroundState gs;
  double width = 0.0;
  EigenResult r;
  if (h.dim() <= options.dense_threshold) {
    auto full = full_spectrum(h, options.tol);
    width = full.values.back() - full.values.front();
    r = truncate(std::move(full), std::min<std::size_t>(2, h.dim()));
  } else {
    r = lanczos_lowest(h, 2, options);
    // Gershgorin bound on the spectral width.
    width = h.norm_bound() + std::abs(r.values.front());
  }
  gs.energy = r.values[0];
  gs.vector = r.vector(0);
  gs.residual_norm = r.residual_norms[0];
  if (r.size() > 1) {
    gs.gap_to_first_excited = r.values[1] - r.values[0];
    gs.degenerate = gs.gap_to_first_excited < degeneracy_tolerance(width);
  } else {
    gs.gap_to_first_excited = std::numeric_limits<double>::infinity();
  }
  return gs;
}

}  // namespace jch
