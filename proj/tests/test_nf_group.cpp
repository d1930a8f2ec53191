#include <doctest.h>

#include <random>
#include <set>
#include <stdexcept>

#include "mna/nf_group.hpp"

using namespace mna;

namespace {

// Independent product: append h letter by letter using only yx = xyz and z central.
NfElement rewrite_product(const GroupParams& p, NfElement g, const NfElement& h) {
  auto times_x = [&](NfElement e) {
    e.c = (e.c + e.b) % 2;  // y^b x = x y^b z^b
    e.a = (e.a + 1) % p.x_mod();
    return e;
  };
  for (std::uint32_t i = 0; i < h.a; ++i) g = times_x(g);
  g.b = (g.b + h.b) % p.y_mod();
  g.c = (g.c + h.c) % 2;
  return g;
}

std::vector<GroupParams> small_params() {
  std::vector<GroupParams> out;
  for (int r = 1; r <= 4; ++r)
    for (int s = 1; s <= r; ++s) out.push_back({r, s});
  return out;
}

}  // namespace

TEST_CASE("normal-form product agrees with letter-by-letter rewriting") {
  for (const auto& p : small_params()) {
    const auto elems = all_elements(p);
    for (const auto& g : elems)
      for (const auto& h : elems) REQUIRE(multiply(p, g, h) == rewrite_product(p, g, h));
  }
}

TEST_CASE("defining relations") {
  for (const auto& p : small_params()) {
    CHECK(power(p, nf_x(), p.x_mod()) == nf_identity());
    CHECK(power(p, nf_y(), p.y_mod()) == nf_identity());
    CHECK(commutator(p, nf_x(), nf_y()) == nf_z());
    CHECK(multiply(p, nf_z(), nf_z()) == nf_identity());
    CHECK(is_central(p, nf_z()));
    CHECK(element_order(p, nf_x()) == p.x_mod());
  }
}

TEST_CASE("index round trip and range") {
  const GroupParams p{3, 2};
  std::set<std::uint32_t> seen;
  for (std::uint32_t i = 0; i < p.order(); ++i) {
    const auto g = element_at(p, i);
    CHECK(element_index(p, g) == i);
    seen.insert(i);
  }
  CHECK(seen.size() == p.order());
  CHECK(element_index(p, make_element(p, 1, 1, 1)) == (1 * 4 + 1) * 2 + 1);
}

TEST_CASE("make_element reduces exponents") {
  const GroupParams p{2, 1};
  CHECK(make_element(p, -1, 3, 5) == NfElement{3, 1, 1});
}

TEST_CASE("validate rejects bad parameters") {
  CHECK_THROWS_AS(validate({1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(validate({0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(validate({8, 8}), std::invalid_argument);
  CHECK_NOTHROW(validate({5, 5}));
}

TEST_CASE("class count and center over the grid") {
  for (int r = 1; r <= 5; ++r)
    for (int s = 1; s <= r && r + s <= 8; ++s) {
      const GroupParams p{r, s};
      CHECK(conjugacy_class_count(p) == (5ULL << (r + s)) / 4);
      const auto cs = characteristic_subgroups(p);
      CHECK(cs.center_order == p.order() / 4);
      CHECK(cs.frattini_equals_center);
      CHECK(cs.derived_is_z);
    }
}

TEST_CASE("maximal subgroups of D(2,1)") {
  const auto ms = maximal_subgroups({2, 1});
  REQUIRE(ms.size() == 3);
  std::multiset<AbelianType> got;
  for (const auto& m : ms) {
    CHECK(m.abelian);
    CHECK(m.elements.size() == 8);
    got.insert(m.type);
  }
  CHECK(got == std::multiset<AbelianType>{{2, 2, 2}, {4, 2}, {4, 2}});
}

TEST_CASE("abelian type from element orders") {
  CHECK(abelian_type_from_orders({1, 2, 2, 2}) == AbelianType{2, 2});
  CHECK(abelian_type_from_orders({1, 2, 4, 4}) == AbelianType{4});
  CHECK(abelian_type_from_orders({1}) == AbelianType{});
  CHECK(format_type({4, 2}) == "C4 x C2");
}

TEST_CASE("property: random products are associative and inverses are two-sided") {
  std::mt19937_64 rng(11);
  for (const auto& p : small_params()) {
    const auto elems = all_elements(p);
    std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
    for (int t = 0; t < 500; ++t) {
      const auto &a = elems[pick(rng)], &b = elems[pick(rng)], &c = elems[pick(rng)];
      CHECK(multiply(p, multiply(p, a, b), c) == multiply(p, a, multiply(p, b, c)));
      CHECK(multiply(p, a, inverse(p, a)) == nf_identity());
    }
  }
}
