#include <doctest.h>

#include <set>

#include "mna/checks.hpp"

using namespace mna;

TEST_CASE("catalog ids are unique") {
  std::set<std::string> ids;
  for (const auto& c : check_catalog()) {
    CHECK(ids.insert(c.id).second);
    CHECK(!c.role.empty());
  }
  CHECK(ids.count("lemma.maxsubgroups"));
  CHECK(ids.count("thm.invariants.rs1"));
}

TEST_CASE("documented examples") {
  const auto a = run_check("lemma.aut2group", {{"r", 2}, {"s", 2}});
  CHECK(a.status == CheckStatus::pass);
  CHECK(a.data["is_two_group"] == false);
  const auto q = run_check("qf.classes", {{"disc", -32}});
  CHECK(q.status == CheckStatus::pass);
  CHECK(q.data["primitive"].size() == 2);
  CHECK_THROWS_AS(run_check("lemma.aut2group", {{"r", 0}, {"s", 0}}), UsageError);
}

TEST_CASE("usage errors") {
  CHECK_THROWS_AS(run_check("no.such.check", {}), UsageError);
  CHECK_THROWS_AS(run_check("lemma.center", {{"r", 1}, {"s", 2}}), UsageError);
  CHECK_THROWS_AS(run_check("lemma.center", {{"r", 2}}), UsageError);
  CHECK_THROWS_AS(run_check("snf.examples", {{"r", 2}}), UsageError);
  CHECK_THROWS_AS(run_check("qf.classes", {{"disc", -31 - 2}}), UsageError);
}

TEST_CASE("outside the hypotheses yields skip with a reason") {
  const auto m = run_check("lemma.maxsubgroups", {{"r", 1}, {"s", 1}});
  CHECK(m.status == CheckStatus::skip);
  CHECK(!m.details.empty());
  CHECK(run_check("lemma.aut2group", {{"r", 5}, {"s", 3}}).status == CheckStatus::skip);
}

TEST_CASE("search checks under a zero cap are inconclusive, never pass") {
  RunOptions o;
  o.caps = {0, 0};
  CHECK(run_check("search.req_s_r2_k14", {}, o).status == CheckStatus::inconclusive);
}

TEST_CASE("report JSON has fixed key order") {
  const auto j = to_json(std::vector<CheckReport>{run_check("snf.examples", {})});
  REQUIRE(j.is_array());
  std::vector<std::string> keys;
  for (const auto& [k, v] : j[0].items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"check_id", "params", "status", "details", "data"});
}

TEST_CASE("empty grid runs only parameter-free checks") {
  const auto reps = verify_all(1, 1, false);
  CHECK(!reps.empty());
  for (const auto& r : reps) {
    CHECK(r.status != CheckStatus::fail);
    CHECK(r.params.empty());
  }
}
