#include <doctest.h>

#include "mna/search.hpp"

using namespace mna;

TEST_CASE("scenario names round trip") {
  for (auto s : {SearchScenario::rs1_r2_consistency, SearchScenario::req_s_r2_k14, SearchScenario::req_s_r2_k12})
    CHECK(parse_scenario(to_string(s)) == s);
  CHECK(!parse_scenario("nope").has_value());
}

TEST_CASE("positive control for D(2,1) finds consistent columns") {
  const auto res = exclusion_search_r2(SearchScenario::rs1_r2_consistency);
  CHECK(res.status == "complete");
  CHECK(res.consistent_found > 0);
  CHECK(!res.witnesses.empty());
}

TEST_CASE("zero caps report inconclusive") {
  const auto res = exclusion_search_r2(SearchScenario::req_s_r2_k14, SearchCaps{0, 0});
  CHECK(res.status == "inconclusive");
  CHECK(res.explored == 0);
}

TEST_CASE("small node cap stops early") {
  const auto res = exclusion_search_r2(SearchScenario::req_s_r2_k14, SearchCaps{1000, 60});
  CHECK(res.status == "inconclusive");
  CHECK(res.explored <= 1000 + 1);
}

TEST_CASE("models carry the imported data") {
  for (const auto& m : scenario_models(SearchScenario::req_s_r2_k14)) {
    CHECK(m.heights.size() == 14);
    CHECK(m.pairs.size() == 2);
    CHECK(m.l == 5);
  }
  for (const auto& m : scenario_models(SearchScenario::req_s_r2_k12)) CHECK(m.heights.size() == 12);
}
