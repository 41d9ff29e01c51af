#include <doctest.h>

#include <algorithm>
#include <string>

#include "jch/checks.hpp"
#include "jch/errors.hpp"

TEST_SUITE("checks") {
  TEST_CASE("registry names are unique and resolvable") {
    const auto infos = jch::available_checks();
    CHECK(infos.size() == 16);
    for (std::size_t i = 0; i < infos.size(); ++i) {
      for (std::size_t j = i + 1; j < infos.size(); ++j) CHECK(infos[i].name != infos[j].name);
    }
    CHECK_THROWS_AS((void)jch::run_check("no-such-check"), jch::InputError);
    const std::vector<std::string> bogus{"gap-n4", "nope"};
    CHECK_THROWS_AS((void)jch::run_checks({}, bogus), jch::InputError);
  }

  TEST_CASE("filtering keeps registry order") {
    const std::vector<std::string> only{"gap-n4", "gap-n2"};
    const auto rs = jch::run_checks({}, only);
    REQUIRE(rs.size() == 2);
    CHECK(rs[0].name == "gap-n2");
    CHECK(rs[1].name == "gap-n4");
  }

  TEST_CASE("fast oracle checks pass at reduced sizes") {
    jch::CheckOptions o;
    o.n_max = 12;
    o.n_max_random = 8;
    for (const char* name : {"polariton-energies", "gap-n2", "gap-n4", "gap-function", "gap-general",
                             "fig1-table", "limit-states", "perturbative-states", "small-lambda",
                             "linear-law", "structural", "lanczos-vs-dense"}) {
      CAPTURE(name);
      const auto r = jch::run_check(name, o);
      CHECK(r.passed);
      CHECK(r.items > 0);
      CHECK(r.failures.empty());
    }
  }

  TEST_CASE("results carry the worst item and its tolerance") {
    const auto r = jch::run_check("gap-n4");
    CHECK(r.passed);
    CHECK(r.items == 3);
    CHECK_FALSE(r.worst_item.empty());
    CHECK(r.max_deviation <= r.tolerance);
  }

  TEST_CASE("failing items are listed with the worst failure first") {
    // The critical-point window is not reached for small N (see README).
    jch::CheckOptions o;
    o.n_max = 6;
    const auto r = jch::run_check("critical-point", o);
    CHECK_FALSE(r.passed);
    CHECK(r.failures.size() == 2);
    CHECK(r.worst_item.find("N=4") != std::string::npos);
  }
}
