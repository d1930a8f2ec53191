#pragma once

// Z[zeta] for zeta a primitive 2^m-th root of unity, stored in the integral
// basis 1, zeta, ..., zeta^(2^(m-1)-1) with zeta^(2^(m-1)) = -1.

#include <cstdint>
#include <string>
#include <vector>

namespace mna {

class Cyclo {
 public:
  Cyclo() = default;
  explicit Cyclo(int m);  // zero of Z[zeta_{2^m}], m >= 1
  static Cyclo integer(int m, long long v);
  static Cyclo monomial(int m, long long e, long long coeff = 1);  // coeff * zeta^e

  int level() const { return m_; }
  std::size_t width() const { return c_.size(); }
  long long operator[](std::size_t i) const { return c_[i]; }
  long long& operator[](std::size_t i) { return c_[i]; }
  const std::vector<long long>& coeffs() const { return c_; }

  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo operator+(const Cyclo& o) const { Cyclo t = *this; return t += o; }
  Cyclo operator-(const Cyclo& o) const { Cyclo t = *this; return t -= o; }
  Cyclo operator*(const Cyclo& o) const;
  Cyclo operator*(long long f) const;
  bool operator==(const Cyclo& o) const { return m_ == o.m_ && c_ == o.c_; }

  Cyclo conj() const;  // zeta -> zeta^-1
  Cyclo galois(long long gamma) const;  // zeta -> zeta^gamma, gamma odd
  // Divides every coefficient by d; throws unless exact.
  Cyclo exact_div(long long d) const;

  bool is_zero() const;
  bool is_integer() const;  // all but the constant coefficient vanish
  long long constant() const { return c_.empty() ? 0 : c_[0]; }

  // Coordinates in Z[zeta_{2^k}] (k <= m); throws if the value lies outside it.
  std::vector<long long> restrict_to(int k) const;

  std::string to_string() const;

 private:
  int m_ = 0;
  std::vector<long long> c_;
};

}  // namespace mna
