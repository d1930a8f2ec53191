#include "mna/nf_group.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mna {

namespace {

std::uint32_t reduce(long long v, std::uint32_t mod) {
  long long m = static_cast<long long>(mod);
  long long r = v % m;
  if (r < 0) r += m;
  return static_cast<std::uint32_t>(r);
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t part_of(std::uint64_t n, std::uint64_t q) {
  std::uint64_t r = 1;
  while (n % q == 0) {
    n /= q;
    r *= q;
  }
  return r;
}

}  // namespace

void validate(const GroupParams& p, std::uint64_t cap) {
  if (p.s < 1 || p.r < p.s) {
    throw std::invalid_argument("parameters must satisfy r >= s >= 1");
  }
  if (p.r + p.s + 1 >= 63 || p.order() > cap) {
    throw std::invalid_argument("group order 2^" + std::to_string(p.r + p.s + 1) +
                                " exceeds the configured cap " + std::to_string(cap));
  }
}

std::string format_type(const AbelianType& t) {
  if (t.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) os << " x ";
    os << "C" << t[i];
  }
  return os.str();
}

std::string format_element(const NfElement& g) {
  std::ostringstream os;
  os << "(" << g.a << "," << g.b << "," << g.c << ")";
  return os.str();
}

NfElement nf_identity() { return {0, 0, 0}; }
NfElement nf_x() { return {1, 0, 0}; }
NfElement nf_y() { return {0, 1, 0}; }
NfElement nf_z() { return {0, 0, 1}; }

NfElement make_element(const GroupParams& p, long long a, long long b, long long c) {
  return {reduce(a, p.x_mod()), reduce(b, p.y_mod()), reduce(c, 2)};
}

// Moving x^a2 left past y^b1 costs [y,x]^(a2*b1) = z^(a2*b1) since z is central of order 2.
NfElement multiply(const GroupParams& p, const NfElement& g, const NfElement& h) {
  return {(g.a + h.a) & (p.x_mod() - 1), (g.b + h.b) & (p.y_mod() - 1),
          (g.c + h.c + h.a * g.b) & 1u};
}

NfElement inverse(const GroupParams& p, const NfElement& g) {
  return make_element(p, -static_cast<long long>(g.a), -static_cast<long long>(g.b),
                      -static_cast<long long>(g.c) + static_cast<long long>(g.a) * g.b);
}

NfElement power(const GroupParams& p, const NfElement& g, long long n) {
  NfElement base = n < 0 ? inverse(p, g) : g;
  unsigned long long e = n < 0 ? static_cast<unsigned long long>(-n) : static_cast<unsigned long long>(n);
  NfElement acc = nf_identity();
  while (e) {
    if (e & 1) acc = multiply(p, acc, base);
    base = multiply(p, base, base);
    e >>= 1;
  }
  return acc;
}

std::uint64_t element_order(const GroupParams& p, const NfElement& g) {
  std::uint64_t n = 1;
  NfElement cur = g;
  while (cur != nf_identity()) {
    cur = multiply(p, cur, cur);
    n *= 2;
  }
  return n;
}

NfElement commutator(const GroupParams& p, const NfElement& g, const NfElement& h) {
  return multiply(p, multiply(p, g, h), inverse(p, multiply(p, h, g)));
}

bool is_central(const GroupParams& p, const NfElement& g) {
  (void)p;
  return g.a % 2 == 0 && g.b % 2 == 0;
}

std::uint32_t element_index(const GroupParams& p, const NfElement& g) {
  return (g.a * p.y_mod() + g.b) * 2 + g.c;
}

NfElement element_at(const GroupParams& p, std::uint32_t index) {
  NfElement g;
  g.c = index & 1u;
  index >>= 1;
  g.b = index % p.y_mod();
  g.a = index / p.y_mod();
  return g;
}

std::vector<NfElement> all_elements(const GroupParams& p) {
  std::vector<NfElement> out;
  out.reserve(p.order());
  for (std::uint32_t i = 0; i < p.order(); ++i) out.push_back(element_at(p, i));
  return out;
}

std::vector<NfElement> generated_subgroup(const GroupParams& p, const std::vector<NfElement>& gens) {
  std::vector<char> seen(p.order(), 0);
  std::vector<NfElement> queue{nf_identity()};
  seen[0] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& s : gens) {
      NfElement n = multiply(p, queue[i], s);
      std::uint32_t idx = element_index(p, n);
      if (!seen[idx]) {
        seen[idx] = 1;
        queue.push_back(n);
      }
    }
  }
  std::sort(queue.begin(), queue.end(), [&](const NfElement& u, const NfElement& v) {
    return element_index(p, u) < element_index(p, v);
  });
  return queue;
}

// For each prime q the counts |{g : q-part of o(g) divides q^i}| determine the
// q-primary decomposition; the invariant factors are then recombined.
AbelianType abelian_type_from_orders(const std::vector<std::uint64_t>& orders) {
  const std::uint64_t n = orders.size();
  if (n <= 1) return {};
  std::map<std::uint64_t, std::vector<std::uint64_t>> primary;
  for (std::uint64_t q : prime_factors(n)) {
    const std::uint64_t sylow = part_of(n, q);
    const std::uint64_t complement = n / sylow;
    std::vector<std::uint64_t> omega{1};
    for (std::uint64_t qi = q;; qi *= q) {
      std::uint64_t cnt = 0;
      for (std::uint64_t o : orders) {
        if (qi % part_of(o, q) == 0) ++cnt;
      }
      omega.push_back(cnt / complement);
      if (omega.back() == sylow) break;
    }
    // at_least[i] = number of cyclic factors of order >= q^i
    std::vector<int> at_least(omega.size() + 1, 0);
    for (std::size_t i = 1; i < omega.size(); ++i) {
      std::uint64_t ratio = omega[i] / omega[i - 1];
      int e = 0;
      while (ratio > 1) {
        ratio /= q;
        ++e;
      }
      at_least[i] = e;
    }
    std::vector<std::uint64_t> powers;
    for (std::size_t i = omega.size() - 1; i >= 1; --i) {
      int exact = at_least[i] - at_least[i + 1];
      std::uint64_t qp = 1;
      for (std::size_t j = 0; j < i; ++j) qp *= q;
      for (int j = 0; j < exact; ++j) powers.push_back(qp);
    }
    primary[q] = powers;
  }
  std::size_t len = 0;
  for (auto& [q, v] : primary) len = std::max(len, v.size());
  AbelianType out(len, 1);
  for (auto& [q, v] : primary) {
    for (std::size_t j = 0; j < v.size(); ++j) out[j] *= v[j];
  }
  return out;
}

AbelianType abelian_type_of(const GroupParams& p, const std::vector<NfElement>& subgroup) {
  std::vector<std::uint64_t> orders;
  orders.reserve(subgroup.size());
  for (const auto& g : subgroup) orders.push_back(element_order(p, g));
  return abelian_type_from_orders(orders);
}

CharacteristicSubgroups characteristic_subgroups(const GroupParams& p) {
  validate(p);
  const auto elems = all_elements(p);
  std::vector<NfElement> center, squares, commutators;
  for (const auto& g : elems) {
    if (commutator(p, g, nf_x()) == nf_identity() && commutator(p, g, nf_y()) == nf_identity()) {
      center.push_back(g);
    }
    squares.push_back(multiply(p, g, g));
  }
  for (const auto& g : elems) {
    for (const auto& h : elems) commutators.push_back(commutator(p, g, h));
  }
  std::sort(commutators.begin(), commutators.end());
  commutators.erase(std::unique(commutators.begin(), commutators.end()), commutators.end());
  std::sort(squares.begin(), squares.end());
  squares.erase(std::unique(squares.begin(), squares.end()), squares.end());
  const auto derived = generated_subgroup(p, commutators);
  const auto frattini = generated_subgroup(p, squares);

  std::vector<NfElement> omega;
  for (const auto& g : center) {
    if (element_order(p, g) <= 2) omega.push_back(g);
  }
  auto by_index = [&](std::vector<NfElement> v) {
    std::sort(v.begin(), v.end(), [&](const NfElement& u, const NfElement& w) {
      return element_index(p, u) < element_index(p, w);
    });
    return v;
  };

  CharacteristicSubgroups out;
  out.center = abelian_type_of(p, center);
  out.derived = abelian_type_of(p, derived);
  out.frattini = abelian_type_of(p, frattini);
  out.omega_of_center = abelian_type_of(p, omega);
  out.center_order = center.size();
  out.frattini_order = frattini.size();
  out.frattini_equals_center = by_index(center) == frattini;
  out.derived_is_z = derived == generated_subgroup(p, {nf_z()});
  return out;
}

std::vector<MaximalSubgroup> maximal_subgroups(const GroupParams& p) {
  validate(p);
  if (p.r < 2) throw std::invalid_argument("maximal subgroup list requires r >= 2 (D(1,1) is dihedral of order 8)");
  const std::vector<std::vector<NfElement>> gens = {
      {make_element(p, 2, 0, 0), nf_y(), nf_z()},
      {nf_x(), make_element(p, 0, 2, 0), nf_z()},
      {make_element(p, 1, 1, 0), make_element(p, 2, 0, 0), nf_z()},
  };
  std::vector<MaximalSubgroup> out;
  for (const auto& g : gens) {
    MaximalSubgroup m;
    m.generators = g;
    m.elements = generated_subgroup(p, g);
    m.abelian = true;
    for (const auto& u : m.elements) {
      for (const auto& v : g) {
        if (commutator(p, u, v) != nf_identity()) m.abelian = false;
      }
    }
    if (m.abelian) m.type = abelian_type_of(p, m.elements);
    out.push_back(std::move(m));
  }
  return out;
}

std::uint64_t conjugacy_class_count(const GroupParams& p) {
  validate(p);
  const std::uint32_t n = static_cast<std::uint32_t>(p.order());
  std::vector<char> seen(n, 0);
  const NfElement gens[2] = {nf_x(), nf_y()};
  std::uint64_t classes = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    ++classes;
    std::vector<NfElement> stack{element_at(p, i)};
    seen[i] = 1;
    while (!stack.empty()) {
      NfElement g = stack.back();
      stack.pop_back();
      for (const auto& t : gens) {
        NfElement h = multiply(p, multiply(p, t, g), inverse(p, t));
        std::uint32_t idx = element_index(p, h);
        if (!seen[idx]) {
          seen[idx] = 1;
          stack.push_back(h);
        }
      }
    }
  }
  return classes;
}

std::uint64_t class_count_formula(const GroupParams& p) {
  return 5ull << (p.r + p.s - 2);
}

}  // namespace mna
