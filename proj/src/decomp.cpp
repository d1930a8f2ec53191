#include "mna/decomp.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mna {

namespace {

long long mod(long long a, long long n) { return ((a % n) + n) % n; }

int log2_exact(std::uint64_t v) {
  int k = 0;
  while ((std::uint64_t{1} << k) < v) ++k;
  if ((std::uint64_t{1} << k) != v) throw std::logic_error("expected a power of two");
  return k;
}

// Inverse of an odd gamma modulo 2^k.
long long unit_inverse(long long gamma, long long modulus) {
  const long long g = mod(gamma, modulus);
  for (long long x = 1; x < modulus; x += 2)
    if (mod(g * x, modulus) == 1) return x;
  if (modulus <= 2) return 1;
  throw std::invalid_argument("gamma is not a unit");
}

CycloColumnFamily empty_family(const std::string& label, const NfElement& u, int k, int phi, bool central,
                               const std::vector<int>& heights) {
  CycloColumnFamily f;
  f.label = label;
  f.u = u;
  f.k_level = k;
  f.phi = phi;
  f.central = central;
  f.heights = heights;
  f.coeffs.assign(heights.size(), std::vector<long long>(f.width(), 0));
  return f;
}

Cyclo row_value(const CycloColumnFamily& f, std::size_t chi) {
  const int level = std::max(f.k_level, 1);
  Cyclo v(level);
  for (std::size_t i = 0; i < f.width(); ++i) v += Cyclo::monomial(level, static_cast<long long>(i), f.coeffs[chi][i]);
  return v;
}

}  // namespace

std::string to_string(CartanCase c) { return c == CartanCase::first ? "first" : "second"; }

long long CycloColumnFamily::coeff(std::size_t chi, long long i) const {
  const long long w = static_cast<long long>(width());
  if (k_level <= 1) {
    // Z[zeta_2] = Z: a_1 = -a_0.
    return mod(i, 2) == 0 ? coeffs[chi][0] : -coeffs[chi][0];
  }
  const long long t = mod(i, 2 * w);
  return t < w ? coeffs[chi][static_cast<std::size_t>(t)] : -coeffs[chi][static_cast<std::size_t>(t - w)];
}

std::vector<long long> CycloColumnFamily::column(std::size_t i) const {
  std::vector<long long> col(num_chars());
  for (std::size_t chi = 0; chi < num_chars(); ++chi) col[chi] = coeffs[chi][i];
  return col;
}

std::vector<int> canonical_heights_rs1(int r) {
  if (r < 2) throw std::invalid_argument("r must be at least 2");
  std::vector<int> h(std::size_t{1} << (r + 1), 0);
  h.resize(h.size() + (std::size_t{1} << (r - 1)), 1);
  return h;
}

std::vector<CycloColumnFamily> build_columns_rs1(int r, CartanCase which) {
  if (r < 2) throw std::invalid_argument("build_columns_rs1: r must be at least 2");
  const SubsectionSet ts = t_set_rs1(r);
  const GroupParams& p = ts.params;
  const std::vector<int> heights = canonical_heights_rs1(r);
  const std::size_t k0 = std::size_t{1} << (r + 1);
  const std::size_t k1 = std::size_t{1} << (r - 1);

  std::vector<NfElement> noncentral, central, in_c;
  std::vector<int> seen;
  for (const auto& e : ts.entries) {
    if (e.element == nf_identity()) continue;
    if (std::find(seen.begin(), seen.end(), e.orbit_id) != seen.end()) continue;
    seen.push_back(e.orbit_id);
    if (!is_central(p, e.element)) {
      noncentral.push_back(e.element);
    } else if (e.l_value == 2) {
      in_c.push_back(e.element);
    } else {
      central.push_back(e.element);
    }
  }

  std::vector<CycloColumnFamily> out;
  for (const NfElement& u : noncentral) {
    auto f = empty_family(format_element(u), u, r, 0, false, heights);
    for (std::size_t chi = 0; chi < k0; ++chi) f.coeffs[chi][chi / 4] = 1;
    out.push_back(std::move(f));
  }
  for (const NfElement& u : central) {
    const int k = log2_exact(element_order(p, u));
    auto f = empty_family(format_element(u), u, k, 0, true, heights);
    for (std::size_t chi = 0; chi < k0; ++chi) f.coeffs[chi][chi >> (r + 2 - k)] = 1;
    for (std::size_t q = 0; q < k1; ++q) f.coeffs[k0 + q][q >> (r - k)] = 2;
    out.push_back(std::move(f));
  }
  for (const NfElement& u : in_c) {
    const int k = log2_exact(element_order(p, u));
    // Both families put row chi at the same index so that d_phi1 and d_phi2 agree on their common support.
    auto f1 = empty_family(format_element(u) + ":phi1", u, k, 1, true, heights);
    const std::size_t w = f1.width();
    for (std::size_t chi = 0; chi < k0; ++chi) f1.coeffs[chi][chi % w] = 1;
    if (which == CartanCase::first)
      for (std::size_t q = 0; q < k1; ++q) f1.coeffs[k0 + q][q % w] = 2;
    auto f2 = empty_family(format_element(u) + ":phi2", u, k, 2, true, heights);
    for (std::size_t chi = 0; chi < (std::size_t{1} << r); ++chi) f2.coeffs[chi][chi % w] = 1;
    for (std::size_t q = 0; q < k1; ++q) f2.coeffs[k0 + q][q % w] = 1;
    out.push_back(std::move(f1));
    out.push_back(std::move(f2));
  }
  return out;
}

long long inner_product(const CycloColumnFamily& fu, std::size_t i, const CycloColumnFamily& fv, std::size_t j) {
  if (fu.num_chars() != fv.num_chars()) throw std::invalid_argument("inner_product: character counts differ");
  if (i >= fu.width() || j >= fv.width()) throw std::out_of_range("inner_product: column index");
  long long s = 0;
  for (std::size_t chi = 0; chi < fu.num_chars(); ++chi) s += fu.coeffs[chi][i] * fv.coeffs[chi][j];
  return s;
}

CycloColumnFamily galois_twist(const CycloColumnFamily& f, long long gamma) {
  if (mod(gamma, 2) == 0) throw std::invalid_argument("galois_twist: gamma must be odd");
  if (f.k_level <= 1) return f;
  const long long modulus = 1LL << f.k_level;
  const long long inv = unit_inverse(gamma, modulus);
  CycloColumnFamily out = f;
  for (std::size_t chi = 0; chi < f.num_chars(); ++chi)
    for (std::size_t t = 0; t < f.width(); ++t)
      out.coeffs[chi][t] = f.coeff(chi, mod(static_cast<long long>(t) * inv, modulus));
  return out;
}

bool check_divisibility_heights(const CycloColumnFamily& f) {
  for (std::size_t chi = 0; chi < f.num_chars(); ++chi) {
    const long long unit = 1LL << f.heights[chi];
    long long sum = 0;
    for (long long v : f.coeffs[chi]) {
      if (v % unit != 0) return false;
      sum += v;
    }
    if (mod(sum, 2 * unit) != unit) return false;
  }
  return true;
}

std::vector<bool> height_parity(const CycloColumnFamily& f) {
  std::vector<bool> odd(f.num_chars());
  for (std::size_t chi = 0; chi < f.num_chars(); ++chi) {
    long long sum = 0;
    for (long long v : f.coeffs[chi]) sum += v;
    odd[chi] = mod(sum, 2) == 1;
  }
  return odd;
}

bool height_parity_consistent(const CycloColumnFamily& f) {
  const auto odd = height_parity(f);
  for (std::size_t chi = 0; chi < f.num_chars(); ++chi)
    if (odd[chi] != (f.heights[chi] == 0)) return false;
  return true;
}

std::optional<std::vector<std::size_t>> shape_match(const CycloColumnFamily& f, const CycloColumnFamily& g) {
  if (f.num_chars() != g.num_chars() || f.width() != g.width()) return std::nullopt;
  auto key = [](const CycloColumnFamily& fam, std::size_t chi) {
    std::vector<long long> k{fam.heights[chi]};
    for (long long v : fam.coeffs[chi]) k.push_back(v < 0 ? -v : v);
    return k;
  };
  std::map<std::vector<long long>, std::vector<std::size_t>> pool;
  for (std::size_t chi = f.num_chars(); chi-- > 0;) pool[key(f, chi)].push_back(chi);
  std::vector<std::size_t> perm(g.num_chars());
  for (std::size_t chi = 0; chi < g.num_chars(); ++chi) {
    auto it = pool.find(key(g, chi));
    if (it == pool.end() || it->second.empty()) return std::nullopt;
    perm[chi] = it->second.back();
    it->second.pop_back();
  }
  return perm;
}

ContributionDiag contributions_at_c(int r, CartanCase which, const CycloColumnFamily& f1, const CycloColumnFamily& f2) {
  if (r < 2) throw std::invalid_argument("contributions_at_c: r must be at least 2");
  if (f1.phi != 1 || f2.phi != 2 || f1.num_chars() != f2.num_chars() || f1.k_level != f2.k_level)
    throw std::invalid_argument("contributions_at_c: expected the two families of one <c>-subsection");
  const long long w = which == CartanCase::first ? 4 : 2;
  ContributionDiag out;
  out.which = which;
  out.valuations_ok = true;
  for (std::size_t chi = 0; chi < f1.num_chars(); ++chi) {
    const Cyclo d1 = row_value(f1, chi), d2 = row_value(f2, chi);
    Cyclo v = d1 * d1.conj() * 3;
    v -= (d1 * d2.conj() + d2 * d1.conj()) * w;
    v += d2 * d2.conj() * (2 * w);
    const bool integral = v.is_integer();
    out.integral.push_back(integral);
    if (!integral) {
      out.valuations_ok = false;
    } else {
      const bool odd = mod(v.constant(), 2) == 1;
      if (odd != (f1.heights[chi] == 0)) out.valuations_ok = false;
    }
    out.values.push_back(v);
  }
  return out;
}

int contribution_sum_residue(int r, bool control) {
  if (r < 2) throw std::invalid_argument("contribution_sum_residue: r must be at least 2");
  // Residues mod 4 only: 2^e mod 4 vanishes for e >= 2.
  auto p2 = [](int e) { return e >= 2 ? 0LL : (1LL << e); };
  const long long lead = control ? 3 : 1;
  const long long s = lead + p2(r + 1) + p2(r - 1) + 3 * (p2(r - 1) - 1);
  return static_cast<int>(mod(s, 4));
}

OrdinaryCartanCheck ordinary_cartan_check(int r) {
  if (r < 2) throw std::invalid_argument("ordinary_cartan_check: r must be at least 2");
  const auto heights = canonical_heights_rs1(r);
  const std::size_t k0 = std::size_t{1} << (r + 1);
  OrdinaryCartanCheck out;
  out.q = IntMatrix(heights.size(), 2);
  for (std::size_t chi = 0; chi < heights.size(); ++chi) {
    if (chi < k0) out.q.at(chi, 0) = 1;
    if (chi < (std::size_t{1} << r) || chi >= k0) out.q.at(chi, 1) = 1;
  }
  out.gram = out.q.transpose() * out.q;
  const auto target = cartan_candidates_rs1(r).retained;
  out.congruent_to_target = congruent_2x2(out.gram, target);
  out.snf = smith_normal_form(out.gram);
  return out;
}

SupportCount support_count(const CycloColumnFamily& f, int r) {
  SupportCount out;
  std::uint64_t k1 = 0;
  for (int h : f.heights)
    if (h == 1) ++k1;
  for (std::size_t i = 0; i < f.width(); ++i)
    for (std::size_t chi = 0; chi < f.num_chars(); ++chi) {
      if (f.coeffs[chi][i] == 0) continue;
      ++out.support_sum;
      if (f.heights[chi] == 1) ++out.height1_hits;
    }
  const std::uint64_t order = std::uint64_t{1} << (r + 2);
  out.bound = order - 3 * out.height1_hits;
  out.closes = out.support_sum == f.num_chars() && out.bound == f.num_chars() && out.height1_hits == k1;
  return out;
}

}  // namespace mna
