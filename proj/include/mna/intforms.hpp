#pragma once

// Exact integer matrices and binary quadratic forms: Smith normal form,
// congruence, Gauss reduction and the Cartan matrices of both families.

#include <gmpxx.h>

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace mna {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpz_class& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const mpz_class& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix scaled(const mpz_class& f) const;
  bool operator==(const IntMatrix& o) const;

  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;
  mpz_class determinant() const;  // Bareiss, exact
  bool is_positive_definite() const;  // leading principal minors

  std::string to_string() const;  // compact "[[a,b],[c,d]]"

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpz_class> data_;
};

// Text format: "rows cols" then row-major entries, whitespace separated.
IntMatrix parse_matrix(std::istream& is);
IntMatrix parse_matrix(const std::string& text);
std::string format_matrix(const IntMatrix& m);

std::vector<mpz_class> smith_normal_form(const IntMatrix& m);
std::string format_divisors(const std::vector<mpz_class>& d);  // "(2, 16)"

// S A S^T; throws unless S is unimodular.
IntMatrix congruent_transform(const IntMatrix& a, const IntMatrix& s);

// Basis of { v in Z^cols : M v = 0 } as the columns of the result (saturated).
IntMatrix integer_kernel(const IntMatrix& m);

struct QuadForm {
  mpz_class a, b, c;  // a x^2 + b xy + c y^2

  mpz_class disc() const { return b * b - 4 * a * c; }
  bool positive_definite() const { return a > 0 && disc() < 0; }
  bool primitive() const;
  bool is_reduced() const;
  bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
  std::string to_string() const;  // "(a, b, c)"
};

// Matrix [[a, b/2], [b/2, c]]; requires even b.
IntMatrix form_to_matrix(const QuadForm& q);
QuadForm matrix_to_form(const IntMatrix& m);  // requires a symmetric 2x2 matrix
// The form x -> q(T^T x), i.e. matrix T M T^T, computed through 2M so odd b is allowed.
QuadForm transform_form(const QuadForm& q, const IntMatrix& t);

struct Reduction {
  QuadForm reduced;
  IntMatrix transform;  // det 1, transform_form(q, transform) == reduced
};

Reduction reduce_qf(const QuadForm& q);

std::vector<QuadForm> reduced_classes(long long disc, bool primitive_only);

// Equivalence under SL(2,Z), and congruence of 2x2 positive definite matrices under GL(2,Z).
bool properly_equivalent(const QuadForm& p, const QuadForm& q);
bool congruent_2x2(const IntMatrix& a, const IntMatrix& b);

struct CartanCandidatesRs1 {
  std::vector<IntMatrix> matrices;  // [0] excluded, [1] retained
  IntMatrix excluded;
  IntMatrix retained;
  std::vector<mpz_class> retained_snf;
};
CartanCandidatesRs1 cartan_candidates_rs1(int r);

struct CartanReqS {
  IntMatrix c_bar;
  IntMatrix c_bz;  // 2 * c_bar
  std::vector<mpz_class> snf_bar;
  std::vector<mpz_class> snf_bz;
};
CartanReqS cartan_req_s(int r);

struct CartanR2Final {
  IntMatrix matrix;
  std::vector<mpz_class> snf;
};
CartanR2Final cartan_r2_final();

// Canonical Cartan matrix 2^(r-1) [[4,2],[2,3]] of the r > s = 1 family.
IntMatrix cartan_rs1(int r);

}  // namespace mna
