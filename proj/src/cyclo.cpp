#include "mna/cyclo.hpp"

#include <sstream>
#include <stdexcept>

namespace mna {

namespace {

long long mod(long long a, long long n) { return ((a % n) + n) % n; }

}  // namespace

Cyclo::Cyclo(int m) : m_(m) {
  if (m < 1 || m > 20) throw std::invalid_argument("Cyclo: level out of range");
  c_.assign(std::size_t{1} << (m - 1), 0);
}

Cyclo Cyclo::integer(int m, long long v) {
  Cyclo z(m);
  z.c_[0] = v;
  return z;
}

Cyclo Cyclo::monomial(int m, long long e, long long coeff) {
  Cyclo z(m);
  const long long half = static_cast<long long>(z.c_.size());
  const long long t = mod(e, 2 * half);
  if (t < half) {
    z.c_[t] = coeff;
  } else {
    z.c_[t - half] = -coeff;
  }
  return z;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  if (m_ != o.m_) throw std::invalid_argument("Cyclo: level mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) {
  if (m_ != o.m_) throw std::invalid_argument("Cyclo: level mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Cyclo Cyclo::operator*(const Cyclo& o) const {
  if (m_ != o.m_) throw std::invalid_argument("Cyclo: level mismatch");
  const std::size_t n = c_.size();
  Cyclo p(m_);
  for (std::size_t i = 0; i < n; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const long long v = c_[i] * o.c_[j];
      if (i + j < n) {
        p.c_[i + j] += v;
      } else {
        p.c_[i + j - n] -= v;
      }
    }
  }
  return p;
}

Cyclo Cyclo::operator*(long long f) const {
  Cyclo p = *this;
  for (auto& v : p.c_) v *= f;
  return p;
}

Cyclo Cyclo::galois(long long gamma) const {
  if (mod(gamma, 2) == 0) throw std::invalid_argument("Cyclo::galois: gamma must be odd");
  Cyclo out(m_);
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i]) out += monomial(m_, static_cast<long long>(i) * gamma, c_[i]);
  return out;
}

Cyclo Cyclo::conj() const { return galois(-1); }

Cyclo Cyclo::exact_div(long long d) const {
  if (d == 0) throw std::invalid_argument("Cyclo: division by zero");
  Cyclo q = *this;
  for (auto& v : q.c_) {
    if (v % d != 0) throw std::logic_error("Cyclo: inexact division");
    v /= d;
  }
  return q;
}

bool Cyclo::is_zero() const {
  for (long long v : c_)
    if (v) return false;
  return true;
}

bool Cyclo::is_integer() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i]) return false;
  return true;
}

std::vector<long long> Cyclo::restrict_to(int k) const {
  if (k < 0 || k > m_) throw std::invalid_argument("Cyclo::restrict_to: bad level");
  if (k <= 1) {
    if (!is_integer()) throw std::logic_error("Cyclo::restrict_to: value is not rational");
    return {constant()};
  }
  const std::size_t step = std::size_t{1} << (m_ - k);
  std::vector<long long> out(std::size_t{1} << (k - 1));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i % step == 0) {
      out[i / step] = c_[i];
    } else if (c_[i] != 0) {
      throw std::logic_error("Cyclo::restrict_to: value outside the subfield");
    }
  }
  return out;
}

std::string Cyclo::to_string() const {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i]) continue;
    const long long v = c_[i];
    os << (v < 0 ? (any ? " - " : "-") : (any ? " + " : ""));
    const long long a = v < 0 ? -v : v;
    if (i == 0) {
      os << a;
    } else {
      if (a != 1) os << a << '*';
      os << "z^" << i;
    }
    any = true;
  }
  if (!any) os << '0';
  return os.str();
}

}  // namespace mna
