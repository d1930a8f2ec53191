#include <doctest.h>

#include "mna/decomp.hpp"

using namespace mna;

TEST_CASE("cyclotomic arithmetic") {
  const Cyclo z = Cyclo::monomial(3, 1);
  Cyclo p = Cyclo::integer(3, 1);
  for (int i = 0; i < 8; ++i) p = p * z;
  CHECK(p == Cyclo::integer(3, 1));
  CHECK(Cyclo::monomial(3, 4) == Cyclo::integer(3, -1));
  CHECK((z * z.conj()) == Cyclo::integer(3, 1));
  CHECK(z.galois(3) == Cyclo::monomial(3, 3));
  CHECK(z.galois(3).galois(3) == z);
  CHECK_THROWS(z.galois(2));
  CHECK(Cyclo::integer(3, 5).restrict_to(1) == std::vector<long long>{5});
  CHECK_THROWS(z.restrict_to(2));
}

TEST_CASE("realized block for small r") {
  for (int r = 2; r <= 4; ++r) {
    const auto b = realize_block_rs1(r);
    const auto rep = verify_realized_block(b);
    CAPTURE(r);
    CAPTURE(rep.detail);
    CHECK(rep.characters_orthonormal);
    CHECK(rep.degrees_match);
    CHECK(rep.subsections_match);
    CHECK(rep.galois_twist_matches);
    CHECK(rep.shapes_match);
    CHECK(rep.divisibility_ok);
    CHECK(rep.parity_ok);
    CHECK(rep.support_ok);
    CHECK(rep.brauer_sum_ok);
    CHECK(rep.contributions_ok);
    CHECK(rep.orthogonality.mismatches == 0);
    CHECK(b.cartan == cartan_rs1(r));
  }
}

TEST_CASE("orthogonality table detects a corrupted coefficient") {
  auto b = realize_block_rs1(2);
  b.families.back().coeffs[0][0] += 2;
  CHECK(check_orthogonality_table(b).mismatches > 0);
}

TEST_CASE("canonical families pass the entry lemmas") {
  for (int r = 2; r <= 5; ++r)
    for (auto which : {CartanCase::first, CartanCase::second})
      for (const auto& f : build_columns_rs1(r, which)) {
        CAPTURE(f.label);
        if (!f.central) CHECK(height_parity_consistent(f));
        if (f.central && f.phi == 0) {
          CHECK(check_divisibility_heights(f));
          CHECK(support_count(f, r).closes);
        }
      }
}

TEST_CASE("galois twist is an action") {
  for (const auto& f : build_columns_rs1(3, CartanCase::second)) {
    CHECK(galois_twist(f, 1).coeffs == f.coeffs);
    CHECK(galois_twist(galois_twist(f, 3), 3).coeffs == galois_twist(f, 9).coeffs);
  }
}

TEST_CASE("contribution residue") {
  for (int r = 2; r <= 8; ++r) {
    CHECK(contribution_sum_residue(r) == 2);
    CHECK(contribution_sum_residue(r, true) == 0);
  }
}

TEST_CASE("ordinary Cartan check") {
  for (int r = 2; r <= 5; ++r) {
    const auto o = ordinary_cartan_check(r);
    CHECK(o.congruent_to_target);
    CHECK(o.gram == cartan_rs1(r));
  }
}

TEST_CASE("shape matching ignores row order and signs only") {
  const auto fams = build_columns_rs1(2, CartanCase::second);
  auto f = fams.front();
  CHECK(shape_match(f, fams.front()).has_value());
  std::swap(f.coeffs[0], f.coeffs[1]);
  for (auto& v : f.coeffs[2]) v = -v;
  CHECK(shape_match(f, fams.front()).has_value());
  f.coeffs[0][0] += 3;
  CHECK(!shape_match(f, fams.front()).has_value());
}

TEST_CASE("canonical contributions at c are integral with the right parity") {
  for (int r = 2; r <= 7; ++r)
    for (auto which : {CartanCase::first, CartanCase::second}) {
      const auto fams = build_columns_rs1(r, which);
      for (std::size_t i = 0; i + 1 < fams.size(); ++i) {
        if (fams[i].phi != 1) continue;
        const auto diag = contributions_at_c(r, which, fams[i], fams[i + 1]);
        CAPTURE(fams[i].label);
        CHECK(diag.valuations_ok);
        for (std::size_t chi = 0; chi < diag.values.size(); ++chi) {
          REQUIRE(diag.values[chi].is_integer());
          CHECK(diag.values[chi].constant() == (fams[i].heights[chi] == 0 ? 3 : 4));
        }
      }
    }
}
