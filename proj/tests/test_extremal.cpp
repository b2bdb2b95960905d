#include <doctest.h>

#include "bohrlab/behrend.hpp"
#include "bohrlab/conv.hpp"
#include "bohrlab/extremal.hpp"
#include "oracles.hpp"

using namespace bohrlab;

TEST_CASE("small cases") {
  const auto one = max_solution_free(1, 1000);
  CHECK(one.max_size == 1);
  CHECK(one.witness == std::vector<std::int64_t>{1});
  const auto two = max_solution_free(2, 1000);
  CHECK(two.max_size == 2);
  CHECK(two.witness == std::vector<std::int64_t>{1, 2});
  CHECK(two.exact);
  CHECK_THROWS(max_solution_free(0, 10));
  CHECK_THROWS(max_solution_free(kExtremalMaxN + 1, 10));
}

TEST_CASE("agrees with exhaustive enumeration") {
  const auto rows = extremal_table(16, 100000000);
  for (const auto& r : rows) {
    const auto ref = oracle::extremal_exhaustive(r.n);
    CHECK(r.exact);
    CHECK(r.max_size == ref.size);
    CHECK(r.witness == ref.witness);
  }
}

TEST_CASE("table properties") {
  const auto rows = extremal_table(40, 100000000);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    CHECK(r.exact);
    CHECK(static_cast<std::int64_t>(r.witness.size()) == r.max_size);
    CHECK(r.witness.back() <= r.n);
    CHECK(oracle::count_integer(r.witness).nontrivial == 0);
    CHECK(r.max_size >= static_cast<std::int64_t>(behrend_construct(r.n).elements.size()));
    if (i > 0) {
      CHECK(r.max_size >= rows[i - 1].max_size);
      CHECK(r.max_size <= rows[i - 1].max_size + 1);
    }
  }
  const std::string csv = extremal_csv(std::vector<ExtremalRecord>(rows.begin(), rows.begin() + 2));
  CHECK(csv == "N,max_size,witness,exact\r\n1,1,1,true\r\n2,2,1 2,true\r\n");
}

TEST_CASE("budget exhaustion keeps a certified lower bound") {
  const auto rows = extremal_table(30, 50);
  bool any_inexact = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    any_inexact = any_inexact || !r.exact;
    CHECK(static_cast<std::int64_t>(r.witness.size()) == r.max_size);
    CHECK(count_solutions_interval(r.witness).nontrivial == 0);
    if (i > 0) CHECK(r.max_size >= rows[i - 1].max_size);
  }
  CHECK(any_inexact);
  const auto exact = extremal_table(30, 100000000);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].max_size <= exact[i].max_size);
}
