#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace jch {

/// Row-major dense matrix of doubles. Small by construction (dim <= a few
/// hundred), so no attempt is made at blocking or BLAS.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  [[nodiscard]] std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  [[nodiscard]] std::vector<double> column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const double> values);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

[[nodiscard]] double dot(std::span<const double> a, std::span<const double> b);
[[nodiscard]] double norm2(std::span<const double> a);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> x);

/// Eigen-decomposition of a real symmetric matrix. Eigenvalues ascending;
/// eigenvectors stored as columns of `vectors` (empty when not requested).
struct SymmetricEigen {
  std::vector<double> values;
  DenseMatrix vectors;
};

/// Householder reduction to tridiagonal form followed by implicit-shift QL.
/// Only the lower triangle of `a` is read. Throws NumericError when the QL
/// sweep exceeds its iteration cap.
[[nodiscard]] SymmetricEigen symmetric_eigen(const DenseMatrix& a, bool want_vectors = true);

/// Implicit QL on a symmetric tridiagonal matrix with diagonal `diag` and
/// sub-diagonal `offdiag` (offdiag[i] couples i and i+1; size n-1).
[[nodiscard]] SymmetricEigen tridiagonal_eigen(std::span<const double> diag,
                                               std::span<const double> offdiag,
                                               bool want_vectors = true);

}  // namespace jch
