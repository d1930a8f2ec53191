#include "mna/intforms.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace mna {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged rows");
    for (long long v : row) data_.emplace_back(static_cast<long>(v));
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix: dimension mismatch in product");
  IntMatrix p(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (at(i, k) == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) p.at(i, j) += at(i, k) * o.at(k, j);
    }
  return p;
}

IntMatrix IntMatrix::scaled(const mpz_class& f) const {
  IntMatrix s = *this;
  for (auto& v : s.data_) v *= f;
  return s;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool IntMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

mpz_class IntMatrix::determinant() const {
  if (!is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix m = *this;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && m.at(s, k) == 0) ++s;
      if (s == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(s, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m.at(i, j) = v;
      }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

bool IntMatrix::is_positive_definite() const {
  if (!is_symmetric()) return false;
  for (std::size_t k = 1; k <= rows_; ++k) {
    IntMatrix sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = at(i, j);
    if (sub.determinant() <= 0) return false;
  }
  return true;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

IntMatrix parse_matrix(std::istream& is) {
  long long rows = 0, cols = 0;
  if (!(is >> rows >> cols) || rows <= 0 || cols <= 0)
    throw std::invalid_argument("matrix text: expected positive 'rows cols' header");
  IntMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::string tok;
      if (!(is >> tok)) throw std::invalid_argument("matrix text: too few entries");
      if (m.at(i, j).set_str(tok, 10) != 0) throw std::invalid_argument("matrix text: bad integer '" + tok + "'");
    }
  std::string extra;
  if (is >> extra) throw std::invalid_argument("matrix text: trailing data");
  return m;
}

IntMatrix parse_matrix(const std::string& text) {
  std::istringstream is(text);
  return parse_matrix(is);
}

std::string format_matrix(const IntMatrix& m) {
  std::ostringstream os;
  os << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m.at(i, j).get_str();
    os << '\n';
  }
  return os.str();
}

std::vector<mpz_class> smith_normal_form(const IntMatrix& input) {
  IntMatrix m = input;
  const std::size_t rows = m.rows(), cols = m.cols();
  const std::size_t n = std::min(rows, cols);
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(a, j), m.at(b, j));
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows; ++i) std::swap(m.at(i, a), m.at(i, b));
  };
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Pivot: least nonzero absolute value in the trailing block.
      bool found = false;
      std::size_t pi = t, pj = t;
      mpz_class best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m.at(i, j) != 0 && (!found || abs(m.at(i, j)) < best)) {
            best = abs(m.at(i, j));
            pi = i;
            pj = j;
            found = true;
          }
      if (!found) return [&] {
          std::vector<mpz_class> d;
          for (std::size_t k = 0; k < n; ++k) d.push_back(abs(m.at(k, k)));
          return d;
        }();
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m.at(i, t) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m.at(i, t).get_mpz_t(), m.at(t, t).get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) m.at(i, j) -= q * m.at(t, j);
        if (m.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m.at(t, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m.at(t, j).get_mpz_t(), m.at(t, t).get_mpz_t());
        for (std::size_t i = t; i < rows; ++i) m.at(i, j) -= q * m.at(i, t);
        if (m.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility of the remaining block by the pivot.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m.at(i, j) % m.at(t, t) != 0) {
            for (std::size_t k = t; k < cols; ++k) m.at(t, k) += m.at(i, k);
            divides = false;
            break;
          }
      if (divides) break;
    }
  }
  std::vector<mpz_class> d;
  for (std::size_t k = 0; k < n; ++k) d.push_back(abs(m.at(k, k)));
  return d;
}

std::string format_divisors(const std::vector<mpz_class>& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? ", " : "") + d[i].get_str();
  return s + ")";
}

IntMatrix congruent_transform(const IntMatrix& a, const IntMatrix& s) {
  if (!s.is_square() || !a.is_square() || s.cols() != a.rows())
    throw std::invalid_argument("congruent_transform: size mismatch");
  if (abs(s.determinant()) != 1) throw std::invalid_argument("congruent_transform: S is not unimodular");
  return s * a * s.transpose();
}

IntMatrix integer_kernel(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t rows = a.rows(), cols = a.cols();
  IntMatrix u = IntMatrix::identity(cols);
  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (std::size_t i = 0; i < rows; ++i) std::swap(a.at(i, x), a.at(i, y));
    for (std::size_t i = 0; i < cols; ++i) std::swap(u.at(i, x), u.at(i, y));
  };
  auto col_sub = [&](std::size_t dst, std::size_t src, const mpz_class& q) {
    for (std::size_t i = 0; i < rows; ++i) a.at(i, dst) -= q * a.at(i, src);
    for (std::size_t i = 0; i < cols; ++i) u.at(i, dst) -= q * u.at(i, src);
  };
  std::size_t p = 0;
  for (std::size_t i = 0; i < rows && p < cols; ++i) {
    for (;;) {
      std::size_t best = cols;
      for (std::size_t j = p; j < cols; ++j)
        if (a.at(i, j) != 0 && (best == cols || abs(a.at(i, j)) < abs(a.at(i, best)))) best = j;
      if (best == cols) break;
      col_swap(p, best);
      bool done = true;
      for (std::size_t j = p + 1; j < cols; ++j) {
        if (a.at(i, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a.at(i, j).get_mpz_t(), a.at(i, p).get_mpz_t());
        col_sub(j, p, q);
        if (a.at(i, j) != 0) done = false;
      }
      if (done) {
        ++p;
        break;
      }
    }
  }
  IntMatrix k(cols, cols - p);
  for (std::size_t j = p; j < cols; ++j)
    for (std::size_t i = 0; i < cols; ++i) k.at(i, j - p) = u.at(i, j);
  return k;
}

bool QuadForm::primitive() const {
  mpz_class g = gcd(gcd(a, b), c);
  return abs(g) == 1;
}

bool QuadForm::is_reduced() const {
  if (!(abs(b) <= a && a <= c)) return false;
  if ((abs(b) == a || a == c) && b < 0) return false;
  return true;
}

std::string QuadForm::to_string() const {
  return "(" + a.get_str() + ", " + b.get_str() + ", " + c.get_str() + ")";
}

IntMatrix form_to_matrix(const QuadForm& q) {
  if (q.b % 2 != 0) throw std::invalid_argument("form_to_matrix: middle coefficient must be even");
  IntMatrix m(2, 2);
  m.at(0, 0) = q.a;
  m.at(0, 1) = q.b / 2;
  m.at(1, 0) = q.b / 2;
  m.at(1, 1) = q.c;
  return m;
}

QuadForm matrix_to_form(const IntMatrix& m) {
  if (m.rows() != 2 || !m.is_symmetric()) throw std::invalid_argument("matrix_to_form: expected a symmetric 2x2 matrix");
  return {m.at(0, 0), 2 * m.at(0, 1), m.at(1, 1)};
}

QuadForm transform_form(const QuadForm& q, const IntMatrix& t) {
  IntMatrix twice(2, 2);
  twice.at(0, 0) = 2 * q.a;
  twice.at(0, 1) = q.b;
  twice.at(1, 0) = q.b;
  twice.at(1, 1) = 2 * q.c;
  const IntMatrix r = t * twice * t.transpose();
  return {r.at(0, 0) / 2, r.at(0, 1), r.at(1, 1) / 2};
}

Reduction reduce_qf(const QuadForm& q) {
  if (!q.positive_definite()) throw std::invalid_argument("reduce_qf: form is not positive definite");
  QuadForm f = q;
  IntMatrix t = IntMatrix::identity(2);
  const IntMatrix swap{{0, -1}, {1, 0}};  // (a, b, c) -> (c, -b, a)
  auto do_swap = [&] {
    f = {f.c, -f.b, f.a};
    t = swap * t;
  };
  for (;;) {
    // Translate b into (-a, a].
    mpz_class k, num = f.a - f.b, den = 2 * f.a;
    mpz_fdiv_q(k.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (k != 0) {
      IntMatrix step(2, 2);
      step.at(0, 0) = 1;
      step.at(1, 0) = k;
      step.at(1, 1) = 1;
      f = {f.a, f.b + 2 * f.a * k, f.a * k * k + f.b * k + f.c};
      t = step * t;
    }
    if (f.a > f.c) {
      do_swap();
      continue;
    }
    if (f.a == f.c && f.b < 0) do_swap();
    break;
  }
  if (!(transform_form(q, t) == f)) throw std::logic_error("reduce_qf: witness does not reproduce the form");
  return {f, t};
}

std::vector<QuadForm> reduced_classes(long long disc, bool primitive_only) {
  if (disc >= 0) throw std::invalid_argument("reduced_classes: discriminant must be negative");
  const long long r = ((disc % 4) + 4) % 4;
  if (r != 0 && r != 1) throw std::invalid_argument("reduced_classes: discriminant must be 0 or 1 mod 4");
  std::vector<QuadForm> out;
  const long long n = -disc;
  for (long long a = 1; 3 * a * a <= n; ++a)
    for (long long b = -a; b <= a; ++b) {
      const long long num = b * b - disc;
      if (num % (4 * a) != 0) continue;
      QuadForm f{mpz_class(static_cast<long>(a)), mpz_class(static_cast<long>(b)), mpz_class(static_cast<long>(num / (4 * a)))};
      if (!f.is_reduced()) continue;
      if (primitive_only && !f.primitive()) continue;
      out.push_back(f);
    }
  return out;
}

bool properly_equivalent(const QuadForm& p, const QuadForm& q) {
  if (p.disc() != q.disc()) return false;
  return reduce_qf(p).reduced == reduce_qf(q).reduced;
}

bool congruent_2x2(const IntMatrix& a, const IntMatrix& b) {
  const QuadForm p = matrix_to_form(a), q = matrix_to_form(b);
  if (!p.positive_definite() || !q.positive_definite())
    throw std::invalid_argument("congruent_2x2: matrices must be positive definite");
  const QuadForm flipped{q.a, -q.b, q.c};  // improper change of variables
  return properly_equivalent(p, q) || properly_equivalent(p, flipped);
}

namespace {
mpz_class pow2z(unsigned e) {
  mpz_class v = 1;
  v <<= e;
  return v;
}
}  // namespace

IntMatrix cartan_rs1(int r) {
  if (r < 2) throw std::invalid_argument("cartan_rs1: r must be at least 2");
  return IntMatrix{{4, 2}, {2, 3}}.scaled(pow2z(static_cast<unsigned>(r - 1)));
}

CartanCandidatesRs1 cartan_candidates_rs1(int r) {
  if (r < 2) throw std::invalid_argument("cartan_candidates_rs1: r must be at least 2");
  const mpz_class f = pow2z(static_cast<unsigned>(r - 1));
  CartanCandidatesRs1 out;
  out.excluded = IntMatrix{{1, 0}, {0, 8}}.scaled(f);
  out.retained = IntMatrix{{3, 1}, {1, 3}}.scaled(f);
  out.matrices = {out.excluded, out.retained};
  out.retained_snf = smith_normal_form(out.retained);
  return out;
}

CartanReqS cartan_req_s(int r) {
  if (r < 2) throw std::invalid_argument("cartan_req_s: r must be at least 2");
  const mpz_class p = pow2z(static_cast<unsigned>(2 * r));
  const mpz_class diag_num = p + 2, off_num = p - 1;
  if (diag_num % 3 != 0 || off_num % 3 != 0) throw std::logic_error("cartan_req_s: entries not integral");
  const mpz_class diag = diag_num / 3, off = off_num / 3;
  CartanReqS out;
  out.c_bar = IntMatrix(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out.c_bar.at(i, j) = i == j ? diag : off;
  out.c_bz = out.c_bar.scaled(2);
  out.snf_bar = smith_normal_form(out.c_bar);
  out.snf_bz = smith_normal_form(out.c_bz);
  return out;
}

CartanR2Final cartan_r2_final() {
  CartanR2Final out;
  out.matrix = IntMatrix{{4, 2, 2}, {2, 4, 2}, {2, 2, 12}};
  out.snf = smith_normal_form(out.matrix);
  return out;
}

}  // namespace mna
