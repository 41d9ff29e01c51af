#include "jch/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "jch/errors.hpp"

namespace jch {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> DenseMatrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void DenseMatrix::set_column(std::size_t c, std::span<const double> values) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

void scale(double alpha, std::span<double> x) {
  for (double& v : x) v *= alpha;
}

namespace {

constexpr int kMaxQlIterations = 60;

// In-place implicit QL on (d, e) where e[i] couples i and i+1 and e has the
// same length as d (last entry is scratch). Rotations are accumulated into
// the columns of z when z is non-empty.
void implicit_ql(std::vector<double>& d, std::vector<double>& e, DenseMatrix* z) {
  const std::size_t n = d.size();
  if (n == 0) return;
  e[n - 1] = 0.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (std::size_t l = 0; l < n; ++l) {
    int iterations = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iterations > kMaxQlIterations) {
        throw NumericError("implicit QL did not converge for eigenvalue " + std::to_string(l) +
                           " after " + std::to_string(kMaxQlIterations) + " iterations");
      }
      // Wilkinson-type shift from the leading 2x2 block.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool deflated = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        if (z != nullptr) {
          for (std::size_t k = 0; k < z->rows(); ++k) {
            const double zf = (*z)(k, i + 1);
            (*z)(k, i + 1) = s * (*z)(k, i) + c * zf;
            (*z)(k, i) = c * (*z)(k, i) - s * zf;
          }
        }
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
}

SymmetricEigen sorted(std::vector<double> d, DenseMatrix* z) {
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  SymmetricEigen out;
  out.values.reserve(d.size());
  for (std::size_t i : order) out.values.push_back(d[i]);
  if (z != nullptr) {
    out.vectors = DenseMatrix(z->rows(), d.size());
    for (std::size_t c = 0; c < order.size(); ++c) {
      for (std::size_t r = 0; r < z->rows(); ++r) out.vectors(r, c) = (*z)(r, order[c]);
    }
  }
  return out;
}

}  // namespace

SymmetricEigen tridiagonal_eigen(std::span<const double> diag, std::span<const double> offdiag,
                                 bool want_vectors) {
  const std::size_t n = diag.size();
  if (n > 0 && offdiag.size() + 1 != n) {
    throw InputError("tridiagonal_eigen: off-diagonal must have length n-1");
  }
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(n, 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());
  if (!want_vectors) {
    implicit_ql(d, e, nullptr);
    return sorted(std::move(d), nullptr);
  }
  DenseMatrix z = DenseMatrix::identity(n);
  implicit_ql(d, e, &z);
  return sorted(std::move(d), &z);
}

SymmetricEigen symmetric_eigen(const DenseMatrix& a, bool want_vectors) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw InputError("symmetric_eigen: matrix must be square");

  // Work on a full symmetric copy built from the lower triangle.
  DenseMatrix w(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) w(i, j) = w(j, i) = a(i, j);
  }
  DenseMatrix q = DenseMatrix::identity(n);

  std::vector<double> v(n);
  std::vector<double> p(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    // Reflector that zeroes w(k+2.., k).
    double alpha = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) alpha += w(i, k) * w(i, k);
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) continue;
    if (w(k + 1, k) > 0.0) alpha = -alpha;
    std::fill(v.begin(), v.end(), 0.0);
    for (std::size_t i = k + 1; i < n; ++i) v[i] = w(i, k);
    v[k + 1] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 == 0.0) continue;
    const double tau = 2.0 / vnorm2;

    // p = tau * W v on the trailing block, then w = p - (tau/2)(p.v) v.
    for (std::size_t i = k + 1; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) sum += w(i, j) * v[j];
      p[i] = tau * sum;
    }
    double pv = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) pv += p[i] * v[i];
    const double kappa = 0.5 * tau * pv;
    for (std::size_t i = k + 1; i < n; ++i) p[i] -= kappa * v[i];
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) w(i, j) -= v[i] * p[j] + p[i] * v[j];
    }
    w(k + 1, k) = w(k, k + 1) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) w(i, k) = w(k, i) = 0.0;

    if (want_vectors) {
      // q <- q (I - tau v v^T)
      for (std::size_t r = 0; r < n; ++r) {
        double sum = 0.0;
        for (std::size_t j = k + 1; j < n; ++j) sum += q(r, j) * v[j];
        sum *= tau;
        for (std::size_t j = k + 1; j < n; ++j) q(r, j) -= sum * v[j];
      }
    }
  }

  std::vector<double> d(n);
  std::vector<double> e(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = w(i, i);
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = w(i + 1, i);

  if (!want_vectors) {
    implicit_ql(d, e, nullptr);
    return sorted(std::move(d), nullptr);
  }
  implicit_ql(d, e, &q);
  return sorted(std::move(d), &q);
}

}  // namespace jch
