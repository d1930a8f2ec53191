#include <doctest.h>

#include <set>
#include <sstream>

#include "mna/generic_group.hpp"

using namespace mna;

TEST_CASE("Cayley table of D(r,s) matches the normal form") {
  for (int r = 1; r <= 3; ++r)
    for (int s = 1; s <= r; ++s) {
      const GroupParams p{r, s};
      const auto g = build_nf_group(p);
      REQUIRE(g.order() == p.order());
      for (const auto& a : all_elements(p))
        for (const auto& b : all_elements(p))
          CHECK(g.mul(nf_to_index(p, a), nf_to_index(p, b)) == nf_to_index(p, multiply(p, a, b)));
      CHECK(g.check_associativity(1000, 3));
    }
}

TEST_CASE("malformed tables are rejected") {
  CHECK_THROWS(CayleyGroup(2, {0, 1, 0, 1}, 0));
  CHECK_THROWS(CayleyGroup(2, {1, 0, 0, 1}, 0));
  CHECK_NOTHROW(CayleyGroup(2, {0, 1, 1, 0}, 0));
}

TEST_CASE("dump format") {
  const auto g = build_cyclic(2);
  std::ostringstream os;
  g.dump(os);
  const std::string s = os.str();
  CHECK(s.rfind("order 2\n", 0) == 0);
}

TEST_CASE("A4 semidirect product contains D(r,1)") {
  for (int r = 2; r <= 4; ++r) {
    const auto sd = build_a4_semidirect(r);
    CHECK(sd.group.order() == 12u << r);
    CHECK(presentation_match(sd.group, sd.xt, sd.yt, {r, 1}));
    CHECK(subgroup_closure(sd.group, {sd.xt, sd.yt}).size() == (4u << r));
    CHECK(sd.group.commutator(sd.xt, sd.yt) == sd.element({4, 3, 2, 1}, 0));
  }
}

TEST_CASE("a 4-cycle not normalizing the chosen involution still works after a V4 shift") {
  const auto sd = build_a4_semidirect(2, kDefaultOrderCap, {3, 4, 2, 1});  // (1 3 2 4)
  CHECK(sd.group.order() == 48);
  CHECK(!presentation_match(sd.group, sd.xt, sd.yt, {2, 1}));
}

TEST_CASE("presentation negative control") {
  const auto sd = build_a4_semidirect(2);
  CHECK(!presentation_match(sd.group, sd.xt, sd.xt, {2, 1}));
  CHECK(!presentation_match(sd.group, sd.yt, sd.xt, {2, 1}));
}

TEST_CASE("quotient by <z> is abelian of type [2^r, 2^s]") {
  const GroupParams p{3, 2};
  const auto g = build_nf_group(p);
  const auto n = subgroup_closure(g, {nf_to_index(p, nf_z())});
  CHECK(is_normal(g, n));
  const auto q = quotient(g, n);
  CHECK(q.is_abelian());
  CHECK(abelian_invariants(q) == AbelianType{8, 4});
}

TEST_CASE("center and derived subgroup agree with the normal form") {
  const GroupParams p{3, 1};
  const auto g = build_nf_group(p);
  CHECK(center(g).size() == p.order() / 4);
  CHECK(derived_subgroup(g).size() == 2);
  CHECK(abelian_invariants(g, center(g)) == characteristic_subgroups(p).center);
}

TEST_CASE("subgroup lattice of D(2,1)") {
  const auto g = build_nf_group({2, 1});
  const auto all = all_subgroups(g, whole_group(g));
  CHECK(all.size() == 23);
  for (const auto& h : all) {
    // closure property
    for (Index a : h.elements)
      for (Index b : h.elements) REQUIRE(h.contains(g.mul(a, b)));
    CHECK(16 % h.size() == 0);
  }
  const auto classes = subgroup_classes(g);
  std::set<std::vector<Index>> keys;
  for (const auto& h : classes) keys.insert(class_key(g, h.elements));
  CHECK(keys.size() == classes.size());
}

TEST_CASE("subgroup_classes of S3 and A4") {
  CHECK(subgroup_classes(build_symmetric(3)).size() == 4);
  CHECK(subgroup_classes(build_alternating4()).size() == 5);
}

TEST_CASE("elementary abelian test") {
  const auto g = build_abelian({2, 2, 2});
  CHECK(is_elementary_abelian(g, whole_group(g)));
  const auto c4 = build_cyclic(4);
  CHECK(!is_elementary_abelian(c4, whole_group(c4)));
}
