#include "mna/subsections.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace mna {

namespace {

// Assigns orbit ids under u -> rep(u^gamma), gamma odd mod `exponent`, in entry order.
template <class Rep>
void assign_orbits(SubsectionSet& ts, std::uint64_t exponent, Rep rep) {
  std::map<std::uint32_t, std::size_t> pos;
  for (std::size_t i = 0; i < ts.entries.size(); ++i) pos[element_index(ts.params, ts.entries[i].element)] = i;
  std::vector<int> id(ts.entries.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < ts.entries.size(); ++i) {
    if (id[i] >= 0) continue;
    for (std::uint64_t g = 1; g < exponent; g += 2) {
      const NfElement img = rep(power(ts.params, ts.entries[i].element, static_cast<long long>(g)));
      auto it = pos.find(element_index(ts.params, img));
      if (it == pos.end()) throw std::logic_error("Galois image outside the representative set");
      id[it->second] = next;
    }
    ++next;
  }
  for (std::size_t i = 0; i < ts.entries.size(); ++i) ts.entries[i].orbit_id = id[i];
}

std::uint64_t pow2(int e) { return std::uint64_t{1} << e; }

}  // namespace

std::uint64_t t_set_size_rs1(int r) {
  if (r < 2) throw std::invalid_argument("r must be at least 2");
  return pow2(r + 1);
}

std::uint64_t t_set_size_req_s(int r) {
  if (r < 2) throw std::invalid_argument("r must be at least 2");
  const std::uint64_t num = 5 * pow2(2 * (r - 1)) + 4;
  if (num % 3 != 0) throw std::logic_error("5*4^(r-1)+4 not divisible by 3");
  return num / 3;
}

SubsectionSet t_set_rs1(int r) {
  if (r < 2) throw std::invalid_argument("t_set_rs1: r must be at least 2");
  SubsectionSet ts;
  ts.params = {r, 1};
  ts.kind = SubsectionCase::rs1;
  ts.canonical_c = make_element(ts.params, 2, 0, 0);
  const auto c_group = generated_subgroup(ts.params, {*ts.canonical_c});
  std::set<NfElement> in_c(c_group.begin(), c_group.end());
  for (const NfElement& g : all_elements(ts.params)) {
    const bool central = is_central(ts.params, g);
    if (!central && !(g.a % 2 == 1 && g.c == 0)) continue;
    SubsectionEntry e{g, 1, 0};
    if (in_c.count(g)) e.l_value = 2;  // includes the identity, whose l(B) = 2
    ts.entries.push_back(e);
  }
  assign_orbits(ts, ts.params.x_mod(), [&](NfElement u) {
    if (!is_central(ts.params, u)) u.c = 0;
    return u;
  });
  if (ts.entries.size() != t_set_size_rs1(r)) throw std::logic_error("t_set_rs1: size mismatch");
  return ts;
}

Automorphism standard_order3_automorphism(const CayleyGroup& d, int r) {
  const GroupParams p{r, r};
  const Index x = nf_to_index(p, nf_x());
  const Index y = nf_to_index(p, nf_y());
  auto a = automorphism_from_images(d, {x, y}, {y, d.mul(d.inv(x), d.inv(y))});
  if (!a) throw std::logic_error("x->y, y->x^-1y^-1 is not an automorphism");
  return *a;
}

SubsectionSet t_set_req_s(int r, const Automorphism& alpha) {
  if (r < 2) throw std::invalid_argument("t_set_req_s: r must be at least 2");
  const GroupParams p{r, r};
  const CayleyGroup* d = alpha.parent;
  if (!d || d->order() != p.order() || alpha.image.size() != d->order())
    throw std::invalid_argument("t_set_req_s: automorphism is not defined on D(r,r)");
  {
    std::vector<char> hit(d->order(), 0);
    for (Index v : alpha.image) {
      if (v >= d->order() || hit[v]) throw std::invalid_argument("t_set_req_s: map is not bijective");
      hit[v] = 1;
    }
    for (Index g = 0; g < d->order(); ++g)
      for (Index h = 0; h < d->order(); ++h)
        if (alpha(d->mul(g, h)) != d->mul(alpha(g), alpha(h)))
          throw std::invalid_argument("t_set_req_s: map is not a homomorphism");
  }
  if (alpha.order() != 3) throw std::invalid_argument("t_set_req_s: automorphism does not have order 3");

  SubsectionSet ts;
  ts.params = p;
  ts.kind = SubsectionCase::req_s;
  auto idx = [&](const NfElement& g) { return nf_to_index(p, g); };
  auto central_rep = [&](const NfElement& g) {
    const Index i = idx(g);
    return element_at(p, std::min({i, alpha(i), alpha(alpha(i))}));
  };
  auto rep = [&](const NfElement& g) {
    if (is_central(p, g)) return central_rep(g);
    Index i = idx(g);
    for (int k = 0; k < 3; ++k, i = alpha(i)) {
      NfElement t = element_at(p, i);
      if (t.a % 2 == 0 && t.b % 2 == 1) {
        t.c = 0;
        return t;
      }
    }
    throw std::logic_error("alpha does not act transitively on D/Phi(D)");
  };

  for (const NfElement& g : all_elements(p)) {
    if (is_central(p, g)) {
      const Index i = idx(g);
      const Index a1 = alpha(i);
      if (a1 == i) {
        ++ts.central_fixed_points;
      } else if (i < a1 && i < alpha(a1)) {
        ++ts.central_three_orbits;
      }
      if (!(central_rep(g) == g)) continue;
    } else if (!(g.a % 2 == 0 && g.b % 2 == 1 && g.c == 0)) {
      continue;
    }
    SubsectionEntry e{g, 1, 0};
    if (g == nf_z()) e.l_value = 3;
    if (g == nf_identity()) e.l_value = 3;
    ts.entries.push_back(e);
  }
  assign_orbits(ts, p.x_mod(), rep);
  if (ts.entries.size() != t_set_size_req_s(r)) throw std::logic_error("t_set_req_s: size mismatch");
  return ts;
}

KMinusL k_minus_l_check(const SubsectionSet& ts) {
  KMinusL out;
  for (const auto& e : ts.entries)
    if (!(e.element == nf_identity())) out.sum += static_cast<std::uint64_t>(e.l_value);
  const int r = ts.params.r;
  if (ts.kind == SubsectionCase::rs1) {
    out.closed_form = pow2(r + 1) + pow2(r - 1) - 2;
  } else {
    out.closed_form = (5 * pow2(2 * (r - 1)) + 7) / 3;
  }
  out.match = out.sum == out.closed_form;
  return out;
}

GaloisOrbitStructure galois_orbit_structure(const SubsectionSet& ts) {
  if (ts.kind != SubsectionCase::rs1) throw std::invalid_argument("galois_orbit_structure: requires the r > s = 1 case");
  std::map<int, std::pair<std::uint64_t, int>> orbits;  // id -> (length, l)
  for (const auto& e : ts.entries) {
    auto& o = orbits[e.orbit_id];
    ++o.first;
    o.second = e.l_value;
  }
  GaloisOrbitStructure out;
  for (const auto& [id, o] : orbits) {
    out.set_lengths.push_back(o.first);
    for (int k = 0; k < o.second; ++k) out.column_lengths.push_back(o.first);
  }
  std::sort(out.set_lengths.begin(), out.set_lengths.end());
  std::sort(out.column_lengths.begin(), out.column_lengths.end());
  out.set_orbit_count = out.set_lengths.size();
  out.column_orbit_count = out.column_lengths.size();
  out.height0_family_sizes = out.set_lengths;
  return out;
}

std::uint64_t galois_pair_count(const SubsectionSet& ts) {
  std::map<int, int> sizes;
  for (const auto& e : ts.entries) ++sizes[e.orbit_id];
  std::uint64_t n = 0;
  for (const auto& [id, s] : sizes)
    if (s == 2) ++n;
  return n;
}

ChainCensus elem_abelian_chains(const GroupParams& p) {
  if (p.s != 1 || p.r < 2) throw std::invalid_argument("elem_abelian_chains: requires s = 1 and r >= 2");
  const CayleyGroup d = build_nf_group(p);
  const Index n = d.order();
  std::vector<Index> involutions;
  for (Index g = 0; g < n; ++g)
    if (g != d.identity() && d.mul(g, g) == d.identity()) involutions.push_back(g);

  // All nontrivial elementary abelian subgroups, grown one involution at a time.
  std::set<std::vector<Index>> found;
  std::vector<std::vector<Index>> frontier;
  for (Index t : involutions) {
    auto s = subgroup_closure(d, {t}).elements;
    if (found.insert(s).second) frontier.push_back(s);
  }
  while (!frontier.empty()) {
    std::vector<std::vector<Index>> next;
    for (const auto& s : frontier) {
      for (Index t : involutions) {
        if (std::binary_search(s.begin(), s.end(), t)) continue;
        bool commutes = true;
        for (Index u : s)
          if (d.mul(t, u) != d.mul(u, t)) {
            commutes = false;
            break;
          }
        if (!commutes) continue;
        std::vector<Index> gens = s;
        gens.push_back(t);
        auto e = subgroup_closure(d, gens).elements;
        if (found.insert(e).second) next.push_back(e);
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::vector<Index>> subs(found.begin(), found.end());
  std::sort(subs.begin(), subs.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });

  auto contains = [](const std::vector<Index>& big, const std::vector<Index>& small) {
    return big.size() > small.size() && std::includes(big.begin(), big.end(), small.begin(), small.end());
  };

  ChainCensus out;
  std::vector<std::set<std::vector<std::vector<Index>>>> classes;
  std::vector<std::size_t> chain;
  auto canonical = [&](const std::vector<std::size_t>& c) {
    std::vector<std::vector<Index>> best;
    for (Index g = 0; g < n; ++g) {
      std::vector<std::vector<Index>> cur;
      for (std::size_t i : c) {
        auto v = conjugate_set(d, subs[i], g);
        std::sort(v.begin(), v.end());
        cur.push_back(std::move(v));
      }
      if (best.empty() || cur < best) best = std::move(cur);
    }
    return best;
  };
  std::vector<std::vector<Index>> chain_tops;
  auto dfs = [&](auto&& self) -> void {
    const std::size_t len = chain.size();
    if (classes.size() < len) classes.resize(len);
    classes[len - 1].insert(canonical(chain));
    if (len == 3) chain_tops.push_back(subs[chain.back()]);
    for (std::size_t j = chain.back() + 1; j < subs.size(); ++j) {
      if (!contains(subs[j], subs[chain.back()])) continue;
      chain.push_back(j);
      self(self);
      chain.pop_back();
    }
  };
  for (std::size_t i = 0; i < subs.size(); ++i) {
    chain = {i};
    dfs(dfs);
  }
  out.max_length = classes.size();
  for (const auto& c : classes) out.chain_counts_by_length.push_back(c.size());

  std::set<std::vector<Index>> e8_classes;
  std::vector<Index> e8;
  for (const auto& s : subs)
    if (s.size() == 8) {
      e8_classes.insert(class_key(d, s));
      e8 = s;
    }
  out.e8_class_count = e8_classes.size();
  const auto standard = subgroup_closure(d, {nf_to_index(p, make_element(p, 1LL << (p.r - 1), 0, 0)),
                                             nf_to_index(p, nf_y()), nf_to_index(p, nf_z())})
                            .elements;
  out.e8_is_standard = out.e8_class_count == 1 && e8 == standard;
  out.long_chains_end_at_e8 = !chain_tops.empty();
  for (const auto& t : chain_tops)
    if (t != standard) out.long_chains_end_at_e8 = false;
  return out;
}

}  // namespace mna
