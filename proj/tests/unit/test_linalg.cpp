#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

#include "jch/linalg.hpp"

using jch::DenseMatrix;

namespace {

DenseMatrix random_symmetric(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = u(rng);
  }
  return a;
}

Eigen::MatrixXd to_eigen(const DenseMatrix& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  }
  return m;
}

void check_decomposition(const DenseMatrix& a, const jch::SymmetricEigen& e, double tol) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const auto v = e.vectors.column(k);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = -e.values[k] * v[i];
      for (std::size_t j = 0; j < n; ++j) s += a(i, j) * v[j];
      res += s * s;
    }
    CHECK(std::sqrt(res) <= tol);
    for (std::size_t l = 0; l <= k; ++l) {
      CHECK(std::abs(jch::dot(v, e.vectors.column(l)) - (k == l ? 1.0 : 0.0)) <= tol);
    }
  }
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("vector helpers") {
    std::vector<double> x{3.0, 4.0};
    std::vector<double> y{1.0, 1.0};
    CHECK(jch::dot(x, y) == 7.0);
    CHECK(jch::norm2(x) == 5.0);
    jch::axpy(2.0, x, y);
    CHECK(y == std::vector<double>{7.0, 9.0});
    jch::scale(0.5, y);
    CHECK(y == std::vector<double>{3.5, 4.5});
  }

  TEST_CASE("dense eigenvalues agree with Eigen on random symmetric matrices") {
    std::mt19937_64 rng(7);
    for (std::size_t n : {1u, 2u, 3u, 5u, 16u, 40u, 97u}) {
      CAPTURE(n);
      const auto a = random_symmetric(n, rng);
      const auto mine = jch::symmetric_eigen(a);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> oracle(to_eigen(a));
      for (std::size_t k = 0; k < n; ++k) {
        CHECK(std::abs(mine.values[k] - oracle.eigenvalues()(static_cast<Eigen::Index>(k))) <= 1e-12);
      }
      check_decomposition(a, mine, 1e-12);
    }
  }

  TEST_CASE("values only path matches the full path") {
    std::mt19937_64 rng(11);
    const auto a = random_symmetric(30, rng);
    const auto full = jch::symmetric_eigen(a, true);
    const auto values = jch::symmetric_eigen(a, false);
    CHECK(values.vectors.rows() == 0);
    for (std::size_t k = 0; k < 30; ++k) CHECK(values.values[k] == doctest::Approx(full.values[k]).epsilon(1e-13));
  }

  TEST_CASE("degenerate and diagonal inputs") {
    const auto id = DenseMatrix::identity(6);
    const auto e = jch::symmetric_eigen(id);
    for (double v : e.values) CHECK(v == 1.0);
    check_decomposition(id, e, 1e-14);

    DenseMatrix d(4, 4);
    d(0, 0) = 3.0;
    d(1, 1) = -1.0;
    d(2, 2) = 3.0;
    d(3, 3) = 0.0;
    const auto ed = jch::symmetric_eigen(d);
    CHECK(ed.values == std::vector<double>{-1.0, 0.0, 3.0, 3.0});
  }

  TEST_CASE("only the lower triangle is read") {
    std::mt19937_64 rng(3);
    auto a = random_symmetric(8, rng);
    const auto ref = jch::symmetric_eigen(a).values;
    for (std::size_t i = 0; i < 8; ++i) {
      for (std::size_t j = i + 1; j < 8; ++j) a(i, j) = 1e6;
    }
    const auto got = jch::symmetric_eigen(a).values;
    for (std::size_t k = 0; k < 8; ++k) CHECK(got[k] == doctest::Approx(ref[k]).epsilon(1e-13));
  }

  TEST_CASE("tridiagonal solver on the free-particle chain") {
    // Eigenvalues of the path graph: 2 cos(k pi / (n + 1)).
    const std::size_t n = 25;
    std::vector<double> diag(n, 0.0);
    std::vector<double> off(n - 1, 1.0);
    const auto e = jch::tridiagonal_eigen(diag, off);
    for (std::size_t k = 0; k < n; ++k) {
      const double want = -2.0 * std::cos(static_cast<double>(k + 1) * std::numbers::pi / static_cast<double>(n + 1));
      CHECK(std::abs(e.values[k] - want) <= 1e-13);
    }
    DenseMatrix t(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) t(i, i + 1) = t(i + 1, i) = 1.0;
    check_decomposition(t, e, 1e-13);
  }

  TEST_CASE("dense matrix accessors") {
    DenseMatrix m(2, 3, 1.5);
    m(1, 2) = -2.0;
    CHECK(m.row(1)[2] == -2.0);
    CHECK(m.column(2) == std::vector<double>{1.5, -2.0});
    m.set_column(0, std::vector<double>{7.0, 8.0});
    CHECK(m(1, 0) == 8.0);
  }
}
