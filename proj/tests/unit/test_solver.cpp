#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <random>

#include "jch/errors.hpp"
#include "jch/hilbert.hpp"
#include "jch/model.hpp"
#include "jch/observables.hpp"
#include "jch/solver.hpp"

using jch::Basis;
using jch::ModelParams;

namespace {

ModelParams make(double delta, double hopping, double lambda = 1.0) {
  ModelParams p;
  p.delta = delta;
  p.hopping = hopping;
  p.lambda = lambda;
  return p;
}

Eigen::VectorXd eigen_spectrum(const jch::SparseHamiltonian& h) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(h.dim()), static_cast<Eigen::Index>(h.dim()));
  for (const auto& t : h.entries()) {
    m(static_cast<Eigen::Index>(t.row), static_cast<Eigen::Index>(t.col)) = t.value;
    m(static_cast<Eigen::Index>(t.col), static_cast<Eigen::Index>(t.row)) = t.value;
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues();
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("full spectrum agrees with Eigen") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int n = 0; n <= 30; n += 3) {
      CAPTURE(n);
      const auto h = jch::build_hamiltonian(make(u(rng), u(rng) / 2.0), Basis(n));
      const auto mine = jch::full_spectrum(h);
      const auto oracle = eigen_spectrum(h);
      const double scale = std::max(1.0, oracle.cwiseAbs().maxCoeff());
      for (std::size_t k = 0; k < mine.size(); ++k) {
        CHECK(std::abs(mine.values[k] - oracle(static_cast<Eigen::Index>(k))) <= 1e-12 * scale);
        CHECK(mine.residual_norms[k] <= 1e-10 * scale);
      }
    }
  }

  TEST_CASE("Lanczos path above the dense threshold agrees with Eigen") {
    // N = 130 gives dim 520, past the default dense threshold of 512.
    const auto h = jch::build_hamiltonian(make(-0.6, 0.9), Basis(130));
    REQUIRE(h.dim() > jch::SolverOptions{}.dense_threshold);
    const auto low = jch::lowest_k(h, 3);
    const auto oracle = eigen_spectrum(h);
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(std::abs(low.values[k] - oracle(static_cast<Eigen::Index>(k))) <= 1e-9 * std::abs(oracle(0)));
    }
    const auto gs = jch::ground_state(h);
    CHECK(gs.energy == doctest::Approx(oracle(0)).epsilon(1e-12));
    CHECK(gs.gap_to_first_excited == doctest::Approx(oracle(1) - oracle(0)).epsilon(1e-6));
  }

  TEST_CASE("Lanczos forced on small blocks matches the dense ground state") {
    jch::SolverOptions opts;
    opts.dense_threshold = 0;
    for (int n = 1; n <= 12; ++n) {
      const auto h = jch::build_hamiltonian(make(0.3 * n - 2.0, 0.7), Basis(n));
      const auto dense = jch::full_spectrum(h);
      const auto lan = jch::lanczos_lowest(h, 2, opts);
      CHECK(std::abs(lan.values[0] - dense.values[0]) <= 1e-10);
      CHECK(std::abs(lan.values[1] - dense.values[1]) <= 1e-9);
      const double ov = jch::dot(lan.vector(0), dense.vector(0));
      CHECK(ov * ov == doctest::Approx(1.0).epsilon(1e-10));
    }
  }

  TEST_CASE("phase convention: first significant amplitude positive") {
    std::vector<double> v{0.0, 1e-14, -0.6, 0.8};
    jch::fix_phase(v);
    CHECK(v[2] == 0.6);
    CHECK(v[3] == -0.8);
    for (int n = 1; n <= 8; ++n) {
      const auto gs = jch::ground_state(jch::build_hamiltonian(make(1.0, 0.4), Basis(n)));
      double mx = 0.0;
      for (double x : gs.vector) mx = std::max(mx, std::abs(x));
      for (double x : gs.vector) {
        if (std::abs(x) > 1e-10 * mx) {
          CHECK(x > 0.0);
          break;
        }
      }
    }
  }

  TEST_CASE("degeneracy flag and one-dimensional block") {
    // N=1, h=0, delta=0: eigenvalues {-1, -1, 1, 1}.
    const auto deg = jch::ground_state(jch::build_hamiltonian(make(0.0, 0.0), Basis(1)));
    CHECK(deg.degenerate);
    CHECK(deg.gap_to_first_excited <= jch::degeneracy_tolerance(2.0));
    const auto split = jch::ground_state(jch::build_hamiltonian(make(0.0, 0.1), Basis(1)));
    CHECK_FALSE(split.degenerate);
    const auto vac = jch::ground_state(jch::build_hamiltonian(make(5.0, 1.0), Basis(0)));
    CHECK(vac.energy == 0.0);
    CHECK(vac.gap_to_first_excited == std::numeric_limits<double>::infinity());
    CHECK_FALSE(vac.degenerate);
    CHECK(jch::degeneracy_tolerance(0.1) == 1e-9);
    CHECK(jch::degeneracy_tolerance(100.0) == doctest::Approx(1e-7));
  }

  TEST_CASE("Hellmann-Feynman: dE0/d(delta) equals the atomic excitation") {
    const double eps = 1e-5;
    for (double delta : {-3.0, -0.5, 0.0, 1.2, 4.0}) {
      for (int n : {2, 4, 7}) {
        const Basis b(n);
        const auto gs = jch::ground_state(jch::build_hamiltonian(make(delta, 0.6), b));
        const double up = jch::ground_state(jch::build_hamiltonian(make(delta + eps, 0.6), b)).energy;
        const double dn = jch::ground_state(jch::build_hamiltonian(make(delta - eps, 0.6), b)).energy;
        const auto pna = jch::total_atomic_distribution(gs.vector, b);
        CHECK((up - dn) / (2 * eps) == doctest::Approx(pna[1] + 2 * pna[2]).epsilon(1e-6));
      }
    }
  }

  TEST_CASE("k must lie in [1, dim]") {
    const auto h = jch::build_hamiltonian(make(0.2, 0.3), Basis(2));
    CHECK(jch::lowest_k(h, 8).size() == 8);
    CHECK_THROWS_AS((void)jch::lowest_k(h, 9), jch::InputError);
    CHECK_THROWS_AS((void)jch::lowest_k(h, 0), jch::InputError);
  }
}
