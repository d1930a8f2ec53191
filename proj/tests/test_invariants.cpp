#include <doctest.h>

#include "mna/invariants.hpp"

using namespace mna;

TEST_CASE("r > s = 1 invariants") {
  for (int r = 2; r <= 8; ++r) {
    const auto inv = invariants_rs1(r);
    CHECK(inv.k == 5u << (r - 1));
    CHECK(inv.k_by_height.at(0) == 2u << r);
    CHECK(inv.k_by_height.at(1) == 1u << (r - 1));
    CHECK(inv.l == 2);
    CHECK(is_consistent(inv));
    const auto q = check_inequalities(inv, 1u << (r + 1));
    CHECK(q.robinson);
    CHECK(q.robinson_equality);
    CHECK(q.olsson);
  }
}

TEST_CASE("r = s special invariants are integral") {
  for (int r = 2; r <= 5; ++r) {
    const auto inv = invariants_req_s_special(r);
    const std::uint64_t q = 1ULL << (2 * (r - 1));
    CHECK(3 * inv.k == 5 * q + 16);
    CHECK(inv.l == 3);
    CHECK(is_consistent(inv));
    CHECK(check_inequalities(inv, 1ULL << (2 * r)).kw_bound.value_or(false));
  }
  CHECK(invariants_req_s_special(2).k == 12);
}

TEST_CASE("auxiliary abelian-defect invariants") {
  for (int s = 0; s <= 5; ++s) {
    const auto inv = invariants_eB3(s);
    CHECK(inv.k - inv.l == (4ULL << s) - 3);
  }
}

TEST_CASE("general r = s bounds") {
  CHECK(invariants_req_s_general(2).k_upper == 16);
  CHECK(invariants_req_s_general(2).source == InvariantSource::bound_only);
}

TEST_CASE("consistency rejects bad records") {
  auto inv = invariants_rs1(2);
  inv.k += 1;
  CHECK(!is_consistent(inv));
  inv = invariants_rs1(2);
  inv.l = 0;
  CHECK(!is_consistent(inv));
}

TEST_CASE("gates catch fabricated values") {
  auto inv = invariants_rs1(3);
  inv.k_by_height = {32, 0};
  inv.k = 32;
  CHECK(!check_inequalities(inv, 16).olsson);
  auto big = invariants_rs1(2);
  big.k_by_height = {8, 3, 0, 0, 1};
  big.k = 12;
  CHECK(!check_inequalities(big, 8).high_heights_vanish);
}
