#include <doctest.h>

#include <set>

#include "mna/subsections.hpp"

using namespace mna;

TEST_CASE("T-set sizes for r > s = 1") {
  for (int r = 2; r <= 6; ++r) {
    const auto ts = t_set_rs1(r);
    CHECK(ts.entries.size() == (2u << r));
    CHECK(t_set_size_rs1(r) == (2u << r));
    std::set<NfElement> distinct;
    for (const auto& e : ts.entries) distinct.insert(e.element);
    CHECK(distinct.size() == ts.entries.size());
  }
}

TEST_CASE("T-set representatives are pairwise non-conjugate and cover the classes") {
  const int r = 3;
  const GroupParams p{r, 1};
  const auto ts = t_set_rs1(r);
  std::set<std::set<NfElement>> classes;
  for (const auto& e : ts.entries) {
    std::set<NfElement> cls;
    for (const auto& h : all_elements(p)) cls.insert(multiply(p, multiply(p, h, e.element), inverse(p, h)));
    classes.insert(cls);
  }
  CHECK(classes.size() == ts.entries.size());
}

TEST_CASE("T-set for r = s") {
  for (int r = 2; r <= 4; ++r) {
    const auto d = build_nf_group({r, r});
    const auto ts = t_set_req_s(r, standard_order3_automorphism(d, r));
    CHECK(ts.entries.size() == t_set_size_req_s(r));
    CHECK(ts.central_fixed_points == 2);
    const auto km = k_minus_l_check(ts);
    CHECK(km.match);
  }
  CHECK(t_set_size_req_s(2) == 8);
}

TEST_CASE("k - l sums for r > s = 1") {
  for (int r = 2; r <= 6; ++r) {
    const auto km = k_minus_l_check(t_set_rs1(r));
    CHECK(km.match);
    CHECK(km.sum == (2u << r) + (1u << (r - 1)) - 2);
  }
}

TEST_CASE("Galois orbit census") {
  for (int r = 2; r <= 5; ++r) {
    const auto g = galois_orbit_structure(t_set_rs1(r));
    CHECK(g.column_orbit_count == static_cast<std::uint64_t>(3 * r + 2));
    CHECK(g.height0_family_sizes.size() == static_cast<std::size_t>(2 * r + 2));
  }
}

TEST_CASE("two pairs of 2-conjugate subsections in D(2,2)") {
  const auto d = build_nf_group({2, 2});
  CHECK(galois_pair_count(t_set_req_s(2, standard_order3_automorphism(d, 2))) == 2);
}

TEST_CASE("elementary abelian chains in D(r,1)") {
  for (int r = 2; r <= 4; ++r) {
    const auto cc = elem_abelian_chains({r, 1});
    CHECK(cc.max_length == 3);
    CHECK(cc.e8_class_count == 1);
    CHECK(cc.e8_is_standard);
  }
}
