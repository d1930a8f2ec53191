#include <doctest.h>

#include <random>
#include <sstream>

#include "mna/intforms.hpp"

using namespace mna;

namespace {

std::vector<mpz_class> d(std::initializer_list<long> v) {
  std::vector<mpz_class> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

QuadForm qf(long a, long b, long c) { return QuadForm{mpz_class(a), mpz_class(b), mpz_class(c)}; }

// Brute-force oracle: product of elementary divisors equals |det| and d1 = gcd of entries.
mpz_class gcd_entries(const IntMatrix& m) {
  mpz_class g = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g = gcd(g, m.at(i, j));
  return g;
}

}  // namespace

TEST_CASE("SNF examples") {
  CHECK(smith_normal_form(IntMatrix{{6, 2}, {2, 6}}) == d({2, 16}));
  CHECK(smith_normal_form(IntMatrix{{2, 0}, {0, 3}}) == d({1, 6}));
  CHECK(smith_normal_form(IntMatrix{{0, 0}, {0, 0}}) == d({0, 0}));
  CHECK(smith_normal_form(cartan_r2_final().matrix) == d({2, 2, 32}));
  CHECK(format_divisors(d({2, 16})) == "(2, 16)");
}

TEST_CASE("property: SNF divisibility chain, determinant and first divisor") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> e(-9, 9);
  for (int t = 0; t < 300; ++t) {
    IntMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m.at(i, j) = e(rng);
    const auto s = smith_normal_form(m);
    REQUIRE(s.size() == 3);
    mpz_class prod = 1;
    for (std::size_t i = 0; i < 3; ++i) {
      prod *= s[i];
      CHECK(s[i] >= 0);
      if (i && s[i - 1] != 0) CHECK(s[i] % s[i - 1] == 0);
    }
    CHECK(prod == abs(m.determinant()));
    CHECK(s[0] == gcd_entries(m));
  }
}

TEST_CASE("determinant and positive definiteness") {
  CHECK(IntMatrix({{4, 2, 2}, {2, 4, 2}, {2, 2, 12}}).determinant() == 128);
  CHECK(IntMatrix({{1, 2}, {2, 1}}).determinant() == -3);
  CHECK(!IntMatrix({{1, 2}, {2, 1}}).is_positive_definite());
  CHECK(IntMatrix({{3, 1}, {1, 3}}).is_positive_definite());
}

TEST_CASE("matrix text format round trip") {
  const auto m = parse_matrix("2 3\n1 -2 3\n4 5 6\n");
  CHECK(m == IntMatrix({{1, -2, 3}, {4, 5, 6}}));
  CHECK(parse_matrix(format_matrix(m)) == m);
  CHECK_THROWS(parse_matrix("2 2\n1 2 3\n"));
}

TEST_CASE("integer kernel") {
  const IntMatrix m{{1, 1, 0}, {0, 1, 1}};
  const auto k = integer_kernel(m);
  REQUIRE(k.cols() == 1);
  const auto prod = m * k;
  for (std::size_t i = 0; i < prod.rows(); ++i) CHECK(prod.at(i, 0) == 0);
  CHECK(abs(k.at(0, 0)) == 1);
}

TEST_CASE("congruence witnesses") {
  const IntMatrix target{{3, 1}, {1, 3}};
  CHECK(congruent_transform(IntMatrix{{8, 4}, {4, 3}}, IntMatrix{{1, -1}, {0, 1}}) == target);
  CHECK(congruent_transform(IntMatrix{{4, 2}, {2, 3}}, IntMatrix{{0, 1}, {-1, 1}}) == target);
  CHECK_THROWS(congruent_transform(target, IntMatrix{{2, 0}, {0, 1}}));
  CHECK(congruent_2x2(IntMatrix{{4, 2}, {2, 3}}, target));
  CHECK(!congruent_2x2(IntMatrix{{1, 0}, {0, 8}}, target));
}

TEST_CASE("reduction of binary forms") {
  CHECK(reduced_classes(-32, true) == std::vector<QuadForm>{qf(1, 0, 8), qf(3, 2, 3)});
  CHECK(reduced_classes(-32, false).size() == 3);
  CHECK(reduced_classes(-23, true).size() == 3);
  CHECK(reduced_classes(-4, true).size() == 1);
  for (long a = 1; a <= 12; ++a)
    for (long b = -12; b <= 12; ++b)
      for (long c = 1; c <= 12; ++c) {
        const QuadForm q = qf(a, b, c);
        if (!q.positive_definite()) continue;
        const auto r = reduce_qf(q);
        CHECK(r.reduced.is_reduced());
        CHECK(r.reduced.disc() == q.disc());
        CHECK(r.transform.determinant() == 1);
        CHECK(transform_form(q, r.transform) == r.reduced);
      }
}

TEST_CASE("proper equivalence distinguishes opposite classes") {
  // Disc -23 has (2,1,3) and (2,-1,3) properly inequivalent.
  CHECK(!properly_equivalent(qf(2, 1, 3), qf(2, -1, 3)));
  CHECK(properly_equivalent(qf(8, 8, 3), qf(3, 2, 3)));
}

TEST_CASE("Cartan matrices") {
  for (int r = 2; r <= 6; ++r) {
    const auto c = cartan_req_s(r);
    CHECK(c.snf_bar == d({1, 1, 1L << (2 * r)}));
    CHECK(c.c_bz == c.c_bar.scaled(2));
    const auto cand = cartan_candidates_rs1(r);
    CHECK(cand.retained.determinant() == cand.excluded.determinant());
    CHECK(congruent_2x2(cartan_rs1(r), cand.retained));
  }
}
