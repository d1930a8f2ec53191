#include "mna/generic_group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace mna {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<Index>& v) const noexcept {
    std::size_t h = v.size();
    for (Index x : v) h = h * 1000003u ^ x;
    return h;
  }
};

using Perm4 = std::array<int, 4>;

Perm4 compose(const Perm4& a, const Perm4& b) {  // (a b)(i) = a(b(i))
  Perm4 out{};
  for (int i = 0; i < 4; ++i) out[i] = a[b[i] - 1];
  return out;
}

Perm4 invert(const Perm4& a) {
  Perm4 out{};
  for (int i = 0; i < 4; ++i) out[a[i] - 1] = i + 1;
  return out;
}

bool is_even(const Perm4& a) {
  int inversions = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (a[i] > a[j]) ++inversions;
  return inversions % 2 == 0;
}

std::string perm_label(const Perm4& a) {
  std::string s;
  for (int v : a) s += static_cast<char>('0' + v);
  return s;
}

bool is_four_cycle(const Perm4& a) {
  Perm4 cur = a;
  const Perm4 id{1, 2, 3, 4};
  for (int k = 1; k < 4; ++k) {
    if (cur == id) return false;
    cur = compose(cur, a);
  }
  return cur == id;
}

std::vector<Index> sorted_unique(std::vector<Index> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Closure of `start` (assumed closed) together with extra generators.
std::vector<Index> close_over(const CayleyGroup& g, std::vector<Index> start, const std::vector<Index>& gens) {
  std::vector<char> seen(g.order(), 0);
  if (start.empty()) start.push_back(g.identity());
  for (Index e : start) seen[e] = 1;
  std::vector<Index> queue = start;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (Index s : gens) {
      Index n = g.mul(queue[i], s);
      if (!seen[n]) {
        seen[n] = 1;
        queue.push_back(n);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

}  // namespace

CayleyGroup::CayleyGroup(Index n, std::vector<Index> table, Index identity, std::vector<std::string> labels)
    : n_(n), identity_(identity), table_(std::move(table)), labels_(std::move(labels)) {
  if (n_ == 0 || table_.size() != static_cast<std::size_t>(n_) * n_ || identity_ >= n_) {
    throw std::invalid_argument("malformed Cayley table");
  }
  if (labels_.empty()) {
    labels_.reserve(n_);
    for (Index i = 0; i < n_; ++i) labels_.push_back(std::to_string(i));
  }
  if (labels_.size() != n_) throw std::invalid_argument("label count does not match group order");
  std::vector<char> row(n_), col(n_);
  for (Index i = 0; i < n_; ++i) {
    std::fill(row.begin(), row.end(), 0);
    std::fill(col.begin(), col.end(), 0);
    for (Index j = 0; j < n_; ++j) {
      Index a = mul(i, j), b = mul(j, i);
      if (a >= n_ || b >= n_ || row[a] || col[b]) throw std::invalid_argument("table is not a Latin square");
      row[a] = col[b] = 1;
    }
    if (mul(identity_, i) != i || mul(i, identity_) != i) throw std::invalid_argument("identity is not neutral");
  }
  inverse_.assign(n_, 0);
  for (Index i = 0; i < n_; ++i) {
    for (Index j = 0; j < n_; ++j) {
      if (mul(i, j) == identity_) {
        inverse_[i] = j;
        break;
      }
    }
    if (mul(inverse_[i], i) != identity_) throw std::invalid_argument("inverse is not two-sided");
  }
}

Index CayleyGroup::power(Index g, long long e) const {
  Index base = e < 0 ? inv(g) : g;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  Index acc = identity_;
  while (k) {
    if (k & 1) acc = mul(acc, base);
    base = mul(base, base);
    k >>= 1;
  }
  return acc;
}

std::uint64_t CayleyGroup::element_order(Index g) const {
  std::uint64_t k = 1;
  Index cur = g;
  while (cur != identity_) {
    cur = mul(cur, g);
    ++k;
  }
  return k;
}

bool CayleyGroup::is_abelian() const {
  for (Index i = 0; i < n_; ++i)
    for (Index j = i + 1; j < n_; ++j)
      if (mul(i, j) != mul(j, i)) return false;
  return true;
}

bool CayleyGroup::check_associativity(std::uint64_t samples, std::uint64_t seed,
                                      std::uint64_t exhaustive_limit) const {
  const std::uint64_t n = n_;
  if (n * n * n <= exhaustive_limit) {
    for (Index a = 0; a < n_; ++a)
      for (Index b = 0; b < n_; ++b)
        for (Index c = 0; c < n_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
    return true;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> pick(0, n_ - 1);
  for (std::uint64_t t = 0; t < samples; ++t) {
    Index a = pick(rng), b = pick(rng), c = pick(rng);
    if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
  }
  return true;
}

void CayleyGroup::dump(std::ostream& os) const {
  os << "order " << n_ << "\n";
  for (const auto& l : labels_) os << l << "\n";
  for (Index i = 0; i < n_; ++i) {
    for (Index j = 0; j < n_; ++j) {
      if (j) os << ' ';
      os << mul(i, j);
    }
    os << "\n";
  }
}

bool SubgroupRef::contains(Index g) const { return std::binary_search(elements.begin(), elements.end(), g); }

Index nf_to_index(const GroupParams& p, const NfElement& g) { return element_index(p, g); }

CayleyGroup build_nf_group(const GroupParams& p, std::uint64_t cap) {
  validate(p, cap);
  const Index n = static_cast<Index>(p.order());
  std::vector<Index> table(static_cast<std::size_t>(n) * n);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (Index i = 0; i < n; ++i) {
    const NfElement g = element_at(p, i);
    labels.push_back(format_element(g));
    for (Index j = 0; j < n; ++j) {
      table[static_cast<std::size_t>(i) * n + j] = element_index(p, multiply(p, g, element_at(p, j)));
    }
  }
  return CayleyGroup(n, std::move(table), 0, std::move(labels));
}

Index SemidirectA4::element(const std::array<int, 4>& sigma, std::uint32_t h) const {
  auto it = std::lower_bound(perms.begin(), perms.end(), sigma);
  if (it == perms.end() || *it != sigma) throw std::invalid_argument("not an even permutation");
  return static_cast<Index>(it - perms.begin()) * (Index{1} << r) + (h & ((Index{1} << r) - 1));
}

SemidirectA4 build_a4_semidirect(int r, std::uint64_t cap, const std::array<int, 4>& four_cycle) {
  if (r < 2) throw std::invalid_argument("the semidirect construction requires r >= 2");
  if (r > 40 || (std::uint64_t{12} << r) > cap) throw std::invalid_argument("group order exceeds the configured cap");
  if (!is_four_cycle(four_cycle)) throw std::invalid_argument("phi must be generated by a 4-cycle");

  SemidirectA4 out;
  out.r = r;
  Perm4 p{1, 2, 3, 4};
  do {
    if (is_even(p)) out.perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  const Index m = Index{1} << r;
  const Index n = 12 * m;
  // phi^k(sigma) = tau^k sigma tau^-k
  std::vector<std::array<Index, 4>> phi(12);
  Perm4 tau_k{1, 2, 3, 4};
  for (int k = 0; k < 4; ++k) {
    const Perm4 tau_k_inv = invert(tau_k);
    for (Index s = 0; s < 12; ++s) {
      const Perm4 img = compose(compose(tau_k, out.perms[s]), tau_k_inv);
      phi[s][k] = static_cast<Index>(std::lower_bound(out.perms.begin(), out.perms.end(), img) - out.perms.begin());
    }
    tau_k = compose(tau_k, four_cycle);
  }
  std::vector<std::vector<Index>> perm_mul(12, std::vector<Index>(12));
  for (Index a = 0; a < 12; ++a)
    for (Index b = 0; b < 12; ++b) {
      const Perm4 prod = compose(out.perms[a], out.perms[b]);
      perm_mul[a][b] = static_cast<Index>(std::lower_bound(out.perms.begin(), out.perms.end(), prod) - out.perms.begin());
    }

  std::vector<Index> table(static_cast<std::size_t>(n) * n);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (Index i = 0; i < n; ++i) {
    const Index s1 = i / m, h1 = i % m;
    labels.push_back("(" + perm_label(out.perms[s1]) + "|" + std::to_string(h1) + ")");
    for (Index j = 0; j < n; ++j) {
      const Index s2 = j / m, h2 = j % m;
      const Index s = perm_mul[s1][phi[s2][h1 % 4]];
      table[static_cast<std::size_t>(i) * n + j] = s * m + ((h1 + h2) % m);
    }
  }
  out.group = CayleyGroup(n, std::move(table), 0, std::move(labels));
  out.xt = out.element({1, 2, 3, 4}, 1);
  out.yt = out.element({2, 1, 4, 3}, 0);
  return out;
}

SubgroupRef subgroup_closure(const CayleyGroup& g, const std::vector<Index>& gens) {
  for (Index s : gens)
    if (s >= g.order()) throw std::out_of_range("generator index out of range");
  SubgroupRef h;
  h.parent = &g;
  h.generators = gens;
  h.elements = close_over(g, {g.identity()}, gens);
  return h;
}

SubgroupRef whole_group(const CayleyGroup& g) {
  SubgroupRef h;
  h.parent = &g;
  h.elements.resize(g.order());
  std::iota(h.elements.begin(), h.elements.end(), Index{0});
  h.generators = h.elements;
  return h;
}

bool presentation_match(const CayleyGroup& g, Index gx, Index gy, const GroupParams& p) {
  const Index e = g.identity();
  const Index z = g.commutator(gx, gy);
  if (g.power(gx, std::int64_t{1} << p.r) != e) return false;
  if (g.power(gy, std::int64_t{1} << p.s) != e) return false;
  if (g.mul(z, z) != e) return false;
  if (g.commutator(gx, z) != e || g.commutator(gy, z) != e) return false;
  return subgroup_closure(g, {gx, gy}).size() == p.order();
}

bool is_normal(const CayleyGroup& g, const SubgroupRef& n) {
  for (Index t = 0; t < g.order(); ++t)
    for (Index h : n.elements)
      if (!n.contains(g.conjugate(t, h))) return false;
  return true;
}

CayleyGroup quotient(const CayleyGroup& g, const SubgroupRef& n) {
  if (!is_normal(g, n)) throw std::invalid_argument("quotient by a non-normal subgroup");
  std::vector<Index> coset_of(g.order(), g.order());
  std::vector<Index> reps;
  for (Index t = 0; t < g.order(); ++t) {
    if (coset_of[t] != g.order()) continue;
    const Index id = static_cast<Index>(reps.size());
    reps.push_back(t);
    for (Index h : n.elements) coset_of[g.mul(t, h)] = id;
  }
  const Index q = static_cast<Index>(reps.size());
  std::vector<Index> table(static_cast<std::size_t>(q) * q);
  std::vector<std::string> labels;
  for (Index i = 0; i < q; ++i) {
    labels.push_back(g.label(reps[i]));
    for (Index j = 0; j < q; ++j) table[static_cast<std::size_t>(i) * q + j] = coset_of[g.mul(reps[i], reps[j])];
  }
  return CayleyGroup(q, std::move(table), coset_of[g.identity()], std::move(labels));
}

AbelianType abelian_invariants(const CayleyGroup& g) {
  if (!g.is_abelian()) throw std::invalid_argument("abelian invariants of a nonabelian group");
  std::vector<std::uint64_t> orders;
  for (Index i = 0; i < g.order(); ++i) orders.push_back(g.element_order(i));
  return abelian_type_from_orders(orders);
}

AbelianType abelian_invariants(const CayleyGroup& g, const SubgroupRef& h) {
  for (Index a : h.elements)
    for (Index b : h.elements)
      if (g.mul(a, b) != g.mul(b, a)) throw std::invalid_argument("abelian invariants of a nonabelian subgroup");
  std::vector<std::uint64_t> orders;
  for (Index a : h.elements) orders.push_back(g.element_order(a));
  return abelian_type_from_orders(orders);
}

CayleyGroup subgroup_as_group(const CayleyGroup& g, const SubgroupRef& h) {
  const Index m = static_cast<Index>(h.size());
  std::vector<Index> table(static_cast<std::size_t>(m) * m);
  std::vector<std::string> labels;
  auto pos = [&](Index e) {
    return static_cast<Index>(std::lower_bound(h.elements.begin(), h.elements.end(), e) - h.elements.begin());
  };
  for (Index i = 0; i < m; ++i) {
    labels.push_back(g.label(h.elements[i]));
    for (Index j = 0; j < m; ++j) table[static_cast<std::size_t>(i) * m + j] = pos(g.mul(h.elements[i], h.elements[j]));
  }
  return CayleyGroup(m, std::move(table), pos(g.identity()), std::move(labels));
}

SubgroupRef center(const CayleyGroup& g) { return centralizer(g, whole_group(g).elements); }

SubgroupRef derived_subgroup(const CayleyGroup& g) {
  std::vector<Index> comms;
  std::vector<char> seen(g.order(), 0);
  for (Index a = 0; a < g.order(); ++a)
    for (Index b = 0; b < g.order(); ++b) {
      Index c = g.commutator(a, b);
      if (!seen[c]) {
        seen[c] = 1;
        comms.push_back(c);
      }
    }
  return subgroup_closure(g, sorted_unique(comms));
}

SubgroupRef centralizer(const CayleyGroup& g, const std::vector<Index>& set) {
  SubgroupRef h;
  h.parent = &g;
  for (Index t = 0; t < g.order(); ++t) {
    bool ok = true;
    for (Index s : set) {
      if (g.mul(t, s) != g.mul(s, t)) {
        ok = false;
        break;
      }
    }
    if (ok) h.elements.push_back(t);
  }
  h.generators = h.elements;
  return h;
}

SubgroupRef normalizer(const CayleyGroup& g, const SubgroupRef& sub) {
  SubgroupRef h;
  h.parent = &g;
  for (Index t = 0; t < g.order(); ++t) {
    bool ok = true;
    for (Index s : sub.elements) {
      if (!sub.contains(g.conjugate(t, s))) {
        ok = false;
        break;
      }
    }
    if (ok) h.elements.push_back(t);
  }
  h.generators = h.elements;
  return h;
}

std::vector<Index> conjugate_set(const CayleyGroup& g, const std::vector<Index>& set, Index by) {
  std::vector<Index> out;
  out.reserve(set.size());
  for (Index s : set) out.push_back(g.conjugate(by, s));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_elementary_abelian(const CayleyGroup& g, const SubgroupRef& h) {
  for (Index a : h.elements) {
    if (g.mul(a, a) != g.identity()) return false;
  }
  return true;  // exponent 2 forces commutativity
}

std::vector<Index> class_key(const CayleyGroup& g, const std::vector<Index>& elements) {
  std::vector<Index> best = elements;
  for (Index t = 0; t < g.order(); ++t) {
    auto c = conjugate_set(g, elements, t);
    if (c < best) best = std::move(c);
  }
  return best;
}

namespace {

bool subgroup_less(const SubgroupRef& a, const SubgroupRef& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.elements < b.elements;
}

// Extensions <H, t> for one t per left coset tH outside H.
template <class Fn>
void for_each_extension(const CayleyGroup& g, const std::vector<Index>& h, const std::vector<Index>& candidates, Fn&& fn) {
  std::vector<char> used(g.order(), 0);
  for (Index e : h) used[e] = 1;
  for (Index t : candidates) {
    if (used[t]) continue;
    for (Index e : h) used[g.mul(t, e)] = 1;
    std::vector<Index> gens = h;
    gens.push_back(t);
    fn(t, close_over(g, h, gens));
  }
}

}  // namespace

std::vector<SubgroupRef> subgroup_classes(const CayleyGroup& g, std::optional<std::uint64_t> order_filter,
                                          std::uint64_t cap) {
  if (g.order() > cap && !order_filter) {
    throw std::invalid_argument("full subgroup lattice above the cap requires an order filter");
  }
  const std::uint64_t target = order_filter.value_or(0);
  std::vector<Index> all(g.order());
  std::iota(all.begin(), all.end(), Index{0});

  std::unordered_set<std::vector<Index>, VecHash> seen;
  std::vector<SubgroupRef> reps;
  auto admit = [&](const std::vector<Index>& elems, const std::vector<Index>& gens) {
    if (seen.count(elems)) return;
    if (target && target % elems.size() != 0) return;
    // record every conjugate, keep the least one as representative
    std::vector<Index> best = elems;
    Index best_by = g.identity();
    for (Index t = 0; t < g.order(); ++t) {
      auto c = conjugate_set(g, elems, t);
      if (c < best) {
        best = c;
        best_by = t;
      }
      seen.insert(std::move(c));
    }
    SubgroupRef r;
    r.parent = &g;
    r.elements = best;
    for (Index s : gens) r.generators.push_back(g.conjugate(best_by, s));
    reps.push_back(std::move(r));
  };
  admit({g.identity()}, {});
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const std::vector<Index> base = reps[i].elements;
    const std::vector<Index> base_gens = reps[i].generators;
    for_each_extension(g, base, all, [&](Index t, std::vector<Index> k) {
      auto gens = base_gens;
      gens.push_back(t);
      admit(k, gens);
    });
  }
  std::vector<SubgroupRef> out;
  for (auto& r : reps) {
    if (!order_filter || r.size() == target) out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

std::vector<SubgroupRef> all_subgroups(const CayleyGroup& g, const SubgroupRef& within) {
  std::set<std::vector<Index>> seen;
  std::vector<SubgroupRef> found;
  auto admit = [&](std::vector<Index> elems, std::vector<Index> gens) {
    if (!seen.insert(elems).second) return;
    SubgroupRef r;
    r.parent = &g;
    r.elements = std::move(elems);
    r.generators = std::move(gens);
    found.push_back(std::move(r));
  };
  admit({g.identity()}, {});
  for (std::size_t i = 0; i < found.size(); ++i) {
    const std::vector<Index> base = found[i].elements;
    const std::vector<Index> base_gens = found[i].generators;
    for_each_extension(g, base, within.elements, [&](Index t, std::vector<Index> k) {
      auto gens = base_gens;
      gens.push_back(t);
      admit(std::move(k), std::move(gens));
    });
  }
  std::sort(found.begin(), found.end(), subgroup_less);
  return found;
}

CayleyGroup build_cyclic(std::uint64_t n) { return build_abelian(n > 1 ? AbelianType{n} : AbelianType{}); }

CayleyGroup build_abelian(const AbelianType& t) {
  std::uint64_t n = 1;
  for (auto f : t) n *= f;
  if (n > (std::uint64_t{1} << 16)) throw std::invalid_argument("abelian group too large");
  const Index m = static_cast<Index>(n);
  auto digits = [&](Index i) {
    std::vector<std::uint64_t> d(t.size());
    for (std::size_t k = t.size(); k-- > 0;) {
      d[k] = i % t[k];
      i = static_cast<Index>(i / t[k]);
    }
    return d;
  };
  auto index_of = [&](const std::vector<std::uint64_t>& d) {
    std::uint64_t i = 0;
    for (std::size_t k = 0; k < t.size(); ++k) i = i * t[k] + d[k];
    return static_cast<Index>(i);
  };
  std::vector<Index> table(static_cast<std::size_t>(m) * m);
  std::vector<std::string> labels;
  for (Index i = 0; i < m; ++i) {
    auto di = digits(i);
    std::ostringstream os;
    os << "(";
    for (std::size_t k = 0; k < di.size(); ++k) os << (k ? "," : "") << di[k];
    os << ")";
    labels.push_back(os.str());
    for (Index j = 0; j < m; ++j) {
      auto dj = digits(j);
      for (std::size_t k = 0; k < t.size(); ++k) dj[k] = (di[k] + dj[k]) % t[k];
      table[static_cast<std::size_t>(i) * m + j] = index_of(dj);
    }
  }
  return CayleyGroup(m, std::move(table), 0, std::move(labels));
}

CayleyGroup build_symmetric(int degree) {
  if (degree < 1 || degree > 6) throw std::invalid_argument("symmetric group degree out of range");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(degree);
  std::iota(p.begin(), p.end(), 1);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const Index n = static_cast<Index>(perms.size());
  std::vector<Index> table(static_cast<std::size_t>(n) * n);
  std::vector<std::string> labels;
  for (Index i = 0; i < n; ++i) {
    std::string l;
    for (int v : perms[i]) l += static_cast<char>('0' + v);
    labels.push_back(l);
    for (Index j = 0; j < n; ++j) {
      std::vector<int> c(degree);
      for (int k = 0; k < degree; ++k) c[k] = perms[i][perms[j][k] - 1];
      table[static_cast<std::size_t>(i) * n + j] =
          static_cast<Index>(std::lower_bound(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return CayleyGroup(n, std::move(table), 0, std::move(labels));
}

CayleyGroup build_alternating4() {
  CayleyGroup s4 = build_symmetric(4);
  std::vector<Index> even;
  for (Index i = 0; i < s4.order(); ++i) {
    Perm4 p{};
    for (int k = 0; k < 4; ++k) p[k] = s4.label(i)[k] - '0';
    if (is_even(p)) even.push_back(i);
  }
  SubgroupRef a4 = subgroup_closure(s4, even);
  return subgroup_as_group(s4, a4);
}

}  // namespace mna
