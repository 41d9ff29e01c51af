#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "jch/analytic.hpp"
#include "jch/errors.hpp"
#include "jch/hilbert.hpp"
#include "jch/model.hpp"
#include "jch/solver.hpp"

using jch::Basis;
using jch::Branch;
using jch::ModelParams;

namespace {

ModelParams make(double delta, double hopping = 0.0, double lambda = 1.0, double omega_c = 0.0) {
  ModelParams p;
  p.delta = delta;
  p.hopping = hopping;
  p.lambda = lambda;
  p.omega_c = omega_c;
  return p;
}

// Naive single-site energy in long double, valid away from cancellation.
long double naive(int n, int sign, long double delta, long double lambda) {
  if (n == 0) return 0.0L;
  return delta / 2 + sign * std::sqrt(delta * delta + 4 * n * lambda * lambda) / 2;
}

}  // namespace

TEST_SUITE("analytic") {
  TEST_CASE("single-site energies agree with a 2x2 Eigen solve") {
    for (double delta : {-7.0, -1.0, 0.0, 0.4, 3.0}) {
      for (int n = 1; n <= 30; ++n) {
        const auto p = make(delta, 0.0, 1.3, 0.25);
        Eigen::Matrix2d m;
        const double g = p.lambda * std::sqrt(static_cast<double>(n));
        m << n * p.omega_c + delta, g, g, n * p.omega_c;
        const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(m).eigenvalues();
        CHECK(jch::polariton_energy(n, Branch::minus, p) == doctest::Approx(ev(0)).epsilon(1e-14));
        CHECK(jch::polariton_energy(n, Branch::plus, p) == doctest::Approx(ev(1)).epsilon(1e-14));
      }
    }
  }

  TEST_CASE("stable branch survives extreme detuning") {
    for (double delta : {1e6, 1e9, -1e6, -1e9}) {
      const auto p = make(delta);
      // Second-order perturbation: the dressed shift is -n lambda^2 / delta
      // for the atom-like branch.
      const double lower = jch::polariton_energy(2, Branch::minus, p);
      const double upper = jch::polariton_energy(2, Branch::plus, p);
      if (delta > 0) {
        CHECK(lower == doctest::Approx(-2.0 / delta).epsilon(1e-9));
      } else {
        CHECK(upper == doctest::Approx(2.0 / -delta).epsilon(1e-9));
      }
      CHECK(lower <= upper);
    }
  }

  TEST_CASE("mixing angle and amplitudes") {
    CHECK(jch::mixing_angle(3, make(0.0)) == doctest::Approx(std::numbers::pi / 2));
    CHECK(jch::mixing_angle(3, make(1e9)) == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(jch::mixing_angle(3, make(-1e9)) == doctest::Approx(std::numbers::pi).epsilon(1e-8));
    const auto lv = jch::polariton_level(2, Branch::minus, make(0.0));
    CHECK(lv.excited_amplitude == doctest::Approx(std::sqrt(0.5)));
    CHECK(lv.ground_amplitude == doctest::Approx(-std::sqrt(0.5)));
    const auto vac = jch::polariton_level(0, Branch::plus, make(2.0));
    CHECK(vac.energy == 0.0);
    CHECK(vac.ground_amplitude == 1.0);
    CHECK_THROWS_AS((void)jch::polariton_energy(-1, Branch::minus, make(0.0)), jch::InputError);
  }

  TEST_CASE("product states form an orthonormal basis of the block") {
    for (int n : {0, 1, 4, 9}) {
      CAPTURE(n);
      const Basis b(n);
      const auto prods = jch::polariton_product_basis(b, make(0.7));
      REQUIRE(prods.size() == b.dimension());
      for (std::size_t i = 0; i < prods.size(); ++i) {
        for (std::size_t j = 0; j < prods.size(); ++j) {
          CHECK(std::abs(jch::dot(prods[i].amplitudes, prods[j].amplitudes) - (i == j ? 1.0 : 0.0)) <= 1e-13);
        }
      }
    }
    const auto prods = jch::polariton_product_basis(Basis(4), make(0.0));
    const auto first = std::min_element(prods.begin(), prods.end(),
                                        [](const auto& a, const auto& b) { return a.energy < b.energy; });
    CHECK(first->label() == "2-,2-");
    CHECK(first->energy == doctest::Approx(-2.0 * std::numbers::sqrt2));
  }

  TEST_CASE("N=4 groups: the listed eight levels plus the {1+,3+} pair") {
    const auto groups = jch::group_polariton_products(jch::polariton_product_basis(Basis(4), make(0.0)), 1e-9);
    REQUIRE(groups.size() == 9);
    const std::vector<std::size_t> sizes{1, 2, 2, 2, 2, 2, 2, 2, 1};
    for (std::size_t k = 0; k < 9; ++k) CHECK(groups[k].members.size() == sizes[k]);
    CHECK(groups[7].members[0].label() == "1+,3+");
    CHECK(groups[8].members[0].label() == "2+,2+");
  }

  TEST_CASE("lowest gap formula") {
    CHECK(jch::gap_lowest_two(make(0.0)) ==
          doctest::Approx(2.0 * std::numbers::sqrt2 - 1.0 - std::numbers::sqrt3).epsilon(1e-15));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int i = 0; i < 30; ++i) {
      const long double d = u(rng);
      const long double want =
          std::abs(naive(3, -1, d, 1) + naive(1, -1, d, 1) - 2 * naive(2, -1, d, 1));
      CHECK(jch::gap_lowest_two(make(static_cast<double>(d))) == doctest::Approx(static_cast<double>(want)).epsilon(1e-10));
      CHECK(jch::gap_lowest_two(make(static_cast<double>(-d))) == jch::gap_lowest_two(make(static_cast<double>(d))));
    }
    CHECK(jch::gap_lowest_two(make(1e6)) > 0.0);
    CHECK(jch::gap_lowest_two(make(1e6)) < 1e-4);
    CHECK(jch::gap_lowest_two(make(0.0, 0.0, 2.0)) == doctest::Approx(2.0 * jch::gap_lowest_two(make(0.0))));
  }

  TEST_CASE("general-N gap forms") {
    CHECK(jch::gap_lowest_two_general(4, 1.0) == doctest::Approx(jch::gap_lowest_two(make(0.0))).epsilon(1e-14));
    for (int n = 4; n <= 30; n += 2) {
      const double m = n / 2.0;
      const double naive_form = 2 * std::sqrt(m) - std::sqrt(m - 1) - std::sqrt(m + 1);
      CHECK(jch::gap_lowest_two_general(n, 1.0) == doctest::Approx(naive_form).epsilon(1e-12));
      CHECK(jch::gap_lowest_two_total_n_form(n, 1.0) ==
            doctest::Approx(2 * std::sqrt(n) - std::sqrt(n - 1.0) - std::sqrt(n + 1.0)).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)jch::gap_lowest_two_general(5, 1.0), jch::InputError);
    CHECK_THROWS_AS((void)jch::gap_lowest_two_general(2, 1.0), jch::InputError);
  }

  TEST_CASE("photonic superfluid state is normalized and binomial") {
    for (int n = 0; n <= 30; ++n) {
      const auto s = jch::photonic_ground_state(Basis(n));
      CHECK(jch::norm2(s.amplitudes) == doctest::Approx(1.0).epsilon(1e-14));
    }
    const Basis b(4);
    const auto s = jch::photonic_ground_state(b);
    // (|4,0> - 2|3,1> + sqrt6|2,2> - 2|1,3> + |0,4>)/4 up to the phase convention.
    CHECK(std::abs(s.amplitudes[b.index_of({0, 0, 2, 2})]) == doctest::Approx(std::sqrt(6.0) / 4));
    CHECK(s.amplitudes[b.index_of({0, 0, 1, 3})] * s.amplitudes[b.index_of({0, 0, 2, 2})] < 0.0);
    const auto plus = jch::photonic_ground_state(b, -1);
    CHECK(plus.amplitudes[b.index_of({0, 0, 1, 3})] * plus.amplitudes[b.index_of({0, 0, 2, 2})] > 0.0);
  }

  TEST_CASE("limit states are eigenvectors of the decoupled limit") {
    // lambda = 0: photonic state has energy -N|h|, coexisting 2 delta - (N-2)|h|.
    for (int n = 2; n <= 10; ++n) {
      const Basis b(n);
      const auto h = jch::build_hamiltonian(make(-3.0, 1.5, 0.0), b);
      const auto ps = jch::photonic_ground_state(b);
      const auto co = jch::coexisting_state_limit(b);
      CHECK(h.expectation(ps.amplitudes) == doctest::Approx(-1.5 * n).epsilon(1e-12));
      CHECK(h.expectation(co.amplitudes) == doctest::Approx(-6.0 - 1.5 * (n - 2)).epsilon(1e-12));
      auto r = h.apply(co.amplitudes);
      jch::axpy(6.0 + 1.5 * (n - 2), co.amplitudes, r);
      CHECK(jch::norm2(r) <= 1e-12);
    }
    CHECK_THROWS_AS((void)jch::coexisting_state_limit(Basis(1)), jch::InputError);
    CHECK_THROWS_AS((void)jch::perturbative_states_n4(Basis(5)), jch::InputError);
  }

  TEST_CASE("perturbative N=4 states") {
    const Basis b(4);
    const auto s = jch::perturbative_states_n4(b);
    const auto h = jch::build_hamiltonian(make(-1.0, 1.0, 0.0), b);
    for (const auto& st : s) {
      CAPTURE(st.label);
      CHECK(jch::norm2(st.amplitudes) == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(h.expectation(st.amplitudes) == doctest::Approx(-4.0).epsilon(1e-13));
    }
    CHECK(std::abs(jch::dot(s[2].amplitudes, s[3].amplitudes)) <= 1e-14);
  }

  TEST_CASE("limit variances and decoupled energies") {
    CHECK(jch::limit_variance(8, +1) == 2.0);
    CHECK(jch::limit_variance(8, -1) == 1.5);
    CHECK_THROWS_AS((void)jch::limit_variance(1, -1), jch::InputError);
    const auto e = jch::hph_ground_energy(4, make(0.0, 1.0));
    CHECK(e.energy == -4.0);
    CHECK_FALSE(e.hopping_nonpositive);
    CHECK(jch::hph_ground_energy(4, make(0.0, -1.0)).hopping_nonpositive);
    CHECK(jch::hph_ground_energy(0, make(0.0, 1.0)).energy == 0.0);
    CHECK(jch::zero_coupling_ground_energy(4, make(-2.0, 1.0)) == -6.0);
    CHECK(jch::zero_coupling_ground_energy(4, make(-0.5, 1.0)) == -4.0);
    CHECK(jch::zero_coupling_ground_energy(1, make(-5.0, 1.0)) == -5.0);
  }

  TEST_CASE("level spacings are cancellation-free differences of the level energies") {
    for (double d : {-15.0, -2.0, -0.1, 0.0, 0.1, 2.0, 15.0}) {
      const auto p = make(d);
      const auto lv = jch::n4_level_energies(p);
      const auto sp = jch::n4_level_spacings(p);
      for (std::size_t k = 0; k < 7; ++k) {
        CHECK(sp[k] == doctest::Approx(lv[k + 1] - lv[k]).epsilon(1e-12).scale(1.0));
        CHECK(sp[k] >= 0.0);
      }
    }
    const auto rows = jch::fig1_gap_table(std::vector<double>{-1e6, 0.0, 1e6});
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
      for (double s : r.spacings) CHECK(s >= 0.0);
    }
    CHECK(rows[1].spacings[0] == doctest::Approx(jch::gap_lowest_two(make(0.0))));
  }

  TEST_CASE("fidelity") {
    const std::vector<double> a{1.0, 0.0};
    const std::vector<double> b{std::sqrt(0.5), -std::sqrt(0.5)};
    CHECK(jch::fidelity(a, b) == doctest::Approx(0.5));
    CHECK(jch::fidelity(b, b) == doctest::Approx(1.0));
  }
}
