#include <doctest.h>

#include "mna/morphisms.hpp"
#include "mna/subsections.hpp"

using namespace mna;

TEST_CASE("Aut(D(r,s)) is a 2-group iff r != s or r = s = 1") {
  for (int r = 1; r <= 4; ++r)
    for (int s = 1; s <= r && r + s <= 6; ++s) {
      const GroupParams p{r, s};
      const auto g = build_nf_group(p);
      const auto info = automorphism_group(g, {nf_to_index(p, nf_x()), nf_to_index(p, nf_y())});
      CAPTURE(r);
      CAPTURE(s);
      CHECK(info.is_two_group == (r != s || r == 1));
    }
}

TEST_CASE("small automorphism groups") {
  CHECK(automorphism_group(build_nf_group({1, 1})).order == 8);  // D8
  CHECK(automorphism_group(build_abelian({2, 2})).order == 6);
  CHECK(automorphism_group(build_abelian({4, 2})).order == 8);
  CHECK(automorphism_group(build_cyclic(8)).order == 4);
  CHECK(automorphism_group(build_symmetric(3)).order == 6);
}

TEST_CASE("standard order-3 automorphism of D(r,r)") {
  for (int r = 2; r <= 3; ++r) {
    const auto d = build_nf_group({r, r});
    const auto a = standard_order3_automorphism(d, r);
    CHECK(a.order() == 3);
    CHECK(!a.is_identity());
    CHECK(a.power(3).is_identity());
    CHECK(fixed_points(d, a).size() == 2);
  }
}

TEST_CASE("automorphism_from_images rejects non-homomorphisms") {
  const auto g = build_cyclic(4);
  const auto gen = small_generating_set(g);
  REQUIRE(gen.size() == 1);
  Index order2 = 0;
  for (Index e = 0; e < 4; ++e)
    if (g.element_order(e) == 2) order2 = e;
  CHECK(!automorphism_from_images(g, gen, {order2}).has_value());
  CHECK(automorphism_from_images(g, gen, {g.inv(gen[0])}).has_value());
}

TEST_CASE("abelian aut predicate against brute force") {
  for (const AbelianType& t : std::vector<AbelianType>{{2}, {4}, {2, 2}, {4, 2}, {8, 2}, {4, 4}, {2, 2, 2}, {8, 4, 2}, {4, 2, 2}}) {
    const auto g = build_abelian(t);
    CAPTURE(format_type(t));
    CHECK(abelian_aut_is_two_group(t) == automorphism_group(g, abelian_basis(t), 1u << 12).is_two_group);
  }
}

TEST_CASE("fusion: A4 and the semidirect product are not 2-nilpotent") {
  const auto a4 = build_alternating4();
  const auto rep = frobenius_two_nilpotent(a4);
  CHECK(!rep.two_nilpotent);
  REQUIRE(rep.witness.has_value());
  CHECK(automizer(a4, *rep.witness).order == 3);
  CHECK(frobenius_two_nilpotent(build_symmetric(3)).two_nilpotent);
  CHECK(!frobenius_two_nilpotent(build_a4_semidirect(2).group).two_nilpotent);
  CHECK(frobenius_two_nilpotent(build_nf_group({2, 1})).two_nilpotent);
}

TEST_CASE("F-centric classes of A4 x| C4") {
  const auto sd = build_a4_semidirect(2);
  const auto& g = sd.group;
  const Index gx = g.mul(sd.xt, sd.yt);
  const auto s = subgroup_closure(g, {gx, sd.yt});
  const auto fc = fcentric_classes(g, s);
  REQUIRE(fc.size() == 4);
  int odd = 0;
  for (const auto& q : fc) odd += automizer(g, q).order % 3 == 0;
  CHECK(odd == 1);
  const auto m1 = subgroup_closure(g, {g.mul(gx, gx), sd.yt, g.commutator(gx, sd.yt)});
  const auto st = automizer_structure(g, m1);
  CHECK(st.order == 6);
  CHECK(st.o2_order == 1);
}

TEST_CASE("automizer of a Sylow subgroup is a 2-group") {
  const auto s4 = build_symmetric(4);
  const auto p = sylow_two_subgroup(s4);
  CHECK(p.size() == 8);
  CHECK(automizer(s4, p).is_two_group);
}

TEST_CASE("H1 with unit coefficients") {
  CHECK(h1_units_char2(build_symmetric(3)) == 1);
  CHECK(h1_units_char2(build_alternating4()) == 3);
  CHECK(h1_units_char2(build_cyclic(6)) == 3);
  CHECK(h1_units_char2(build_abelian({2, 2})) == 1);
}

TEST_CASE("gluing incidence derivations") {
  CHECK(gluing_h1_incidence().trivial);
  CHECK(gluing_h1_incidence().solutions == 1);
  CHECK(!gluing_h1_incidence(3, 1).trivial);
  CHECK(gluing_h1_incidence(4, 3).solutions == 2);  // 2d = 0 mod 4
}
