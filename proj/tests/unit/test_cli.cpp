#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "jch/errors.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<const char*> args) {
  args.insert(args.begin(), "jch");
  std::ostringstream out;
  std::ostringstream err;
  const int code = jch::cli::run(static_cast<int>(args.size()), args.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("range syntax") {
    CHECK(jch::cli::parse_axis("-8:8:161").values.size() == 161);
    CHECK(jch::cli::parse_axis("0:1:3").values == std::vector<double>{0.0, 0.5, 1.0});
    const auto lg = jch::cli::parse_axis("-1e6:1e6:401:log").values;
    CHECK(lg.size() == 401);
    CHECK(lg[200] == 0.0);
    CHECK(jch::cli::parse_axis("1e-4").values == std::vector<double>{1e-4});
    CHECK(jch::cli::parse_axis(" 1, 2.5 ,+3").values == std::vector<double>{1.0, 2.5, 3.0});
    CHECK(jch::cli::parse_axis("0.5,1,...,3").values == std::vector<double>{0.5, 1.0, 1.5, 2.0, 2.5, 3.0});
    CHECK(jch::cli::parse_axis("3,2,...,0").values == std::vector<double>{3, 2, 1, 0});
    for (const char* bad : {"", "1:2", "1:2:0", "1:2:3:cubic", "1:2:3:4:5", "a,b", "1,,2", "1,2,...",
                            "1,2,...,2.5", "1,1,...,4", "1,2,...,0", "nan", "inf"}) {
      CAPTURE(bad);
      CHECK_THROWS_AS((void)jch::cli::parse_axis(bad), jch::InputError);
    }
  }

  TEST_CASE("excitation-number lists") {
    const auto ns = jch::cli::parse_n_values("4,6,...,30");
    CHECK(ns.size() == 14);
    CHECK(ns.front() == 4);
    CHECK(ns.back() == 30);
    CHECK(jch::cli::parse_n_values("0") == std::vector<int>{0});
    CHECK_THROWS_AS((void)jch::cli::parse_n_values("-2"), jch::InputError);
    CHECK_THROWS_AS((void)jch::cli::parse_n_values("2.5"), jch::InputError);
  }

  TEST_CASE("solve reports") {
    const auto insulator = run({"solve", "--n", "4", "--delta", "0", "--hopping", "0.005"});
    CHECK(insulator.code == jch::cli::kSuccess);
    CHECK(insulator.out.find("phase          polaritonic-insulator") != std::string::npos);
    CHECK(insulator.out.find("Gamma_1") != std::string::npos);

    const auto vacuum = run({"solve", "--n", "0"});
    CHECK(vacuum.code == jch::cli::kSuccess);
    CHECK(vacuum.out.find("energy         0\n") != std::string::npos);
    CHECK(vacuum.out.find("d_n1           0\n") != std::string::npos);
    CHECK(vacuum.out.find("d_n1a          0\n") != std::string::npos);

    const auto co = run({"solve", "--n", "4", "--delta", "-1000", "--hopping", "1e-4", "--dump-state"});
    CHECK(co.code == jch::cli::kSuccess);
    CHECK(co.out.find("phase          coexisting") != std::string::npos);
    CHECK(co.out.find("amplitudes") != std::string::npos);

    const auto shifted = run({"solve", "--n", "2", "--include-omega-c", "10"});
    CHECK(shifted.out.find("energy         18\n") != std::string::npos);
  }

  TEST_CASE("sweep writes one record per grid point") {
    const auto r = run({"sweep", "--n", "4,6", "--delta", "-2:2:5", "--hopping", "0.1,1"});
    CHECK(r.code == jch::cli::kSuccess);
    CHECK(count_lines(r.out) == 1 + 2 * 2 * 5);
    const auto j = run({"sweep", "--n", "2", "--delta", "0", "--format", "json", "--jobs", "2"});
    CHECK(j.code == jch::cli::kSuccess);
    CHECK(j.out.front() == '[');
  }

  TEST_CASE("numeric failure exits with 3") {
    const auto r = run({"sweep", "--n", "9", "--delta", "0.3", "--hopping", "0.7", "--tol", "0"});
    CHECK(r.code == jch::cli::kNumericFailure);
    CHECK(r.err.find("failed to solve") != std::string::npos);
  }

  TEST_CASE("gaps table") {
    const auto r = run({"gaps", "--delta", "-1,0,1"});
    CHECK(r.code == jch::cli::kSuccess);
    CHECK(r.out.rfind("delta,gap1,gap2,gap3,gap4,gap5,gap6,gap7\n", 0) == 0);
    CHECK(count_lines(r.out) == 4);
    CHECK(r.out.find("\n0,0.0963763171773,") != std::string::npos);
  }

  TEST_CASE("fig9 records and fits") {
    const auto r = run({"fig9", "--n", "2,4,6"});
    CHECK(r.code == jch::cli::kSuccess);
    CHECK(count_lines(r.out) == 1 + 6);
    CHECK(r.err.find("delta 10000: d_n1 = 0.25") != std::string::npos);
  }

  TEST_CASE("check subcommand") {
    const auto one = run({"check", "--only", "gap-n4"});
    CHECK(one.code == jch::cli::kSuccess);
    CHECK(count_lines(one.out) == 1);
    CHECK(one.out.rfind("PASS  gap-n4", 0) == 0);

    const auto list = run({"check", "--list"});
    CHECK(list.code == jch::cli::kSuccess);
    CHECK(count_lines(list.out) == 16);

    // A check that fails on the reduced N range; see the README for why.
    const auto failing = run({"check", "--only", "critical-point", "--n-max", "6"});
    CHECK(failing.code == jch::cli::kCheckFailure);
    CHECK(failing.err.find("critical-point") != std::string::npos);
  }

  TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == jch::cli::kUsageError);
    CHECK(run({"frobnicate"}).code == jch::cli::kUsageError);
    CHECK(run({"solve", "--n", "-1"}).code == jch::cli::kUsageError);
    CHECK(run({"solve", "--n", "four"}).code == jch::cli::kUsageError);
    CHECK(run({"solve", "--lambda", "-1"}).code == jch::cli::kUsageError);
    CHECK(run({"solve", "--bogus"}).code == jch::cli::kUsageError);
    CHECK(run({"sweep", "--delta", "1:2"}).code == jch::cli::kUsageError);
    CHECK(run({"sweep", "--format", "xml"}).code == jch::cli::kUsageError);
    CHECK(run({"check", "--only", "nope"}).code == jch::cli::kUsageError);
    CHECK(run({"check", "--n-max", "2"}).code == jch::cli::kUsageError);
    CHECK(run({"--help"}).code == jch::cli::kSuccess);
  }
}
