#include "mna/morphisms.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace mna {

namespace {

constexpr Index kUnset = std::numeric_limits<Index>::max();

bool is_power_of_two(std::uint64_t v) { return v && !(v & (v - 1)); }

std::uint64_t odd_part(std::uint64_t v) {
  while (v && v % 2 == 0) v /= 2;
  return v;
}

// Fills pi with the homomorphism sending gens[k] -> images[k]; false if the
// assignment is inconsistent or not bijective.
bool extend(const CayleyGroup& g, const std::vector<Index>& gens, const std::vector<Index>& images,
            std::vector<Index>& pi, std::vector<Index>& queue, std::vector<char>& hit) {
  const Index n = g.order();
  pi.assign(n, kUnset);
  queue.clear();
  pi[g.identity()] = g.identity();
  queue.push_back(g.identity());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Index e = queue[i];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const Index f = g.mul(e, gens[k]);
      const Index im = g.mul(pi[e], images[k]);
      if (pi[f] == kUnset) {
        pi[f] = im;
        queue.push_back(f);
      } else if (pi[f] != im) {
        return false;
      }
    }
  }
  if (queue.size() != n) return false;
  hit.assign(n, 0);
  for (Index v : pi) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

std::vector<Index> closure_elems(const CayleyGroup& g, const std::vector<Index>& gens) {
  return subgroup_closure(g, gens).elements;
}

}  // namespace

std::uint64_t Automorphism::order() const {
  std::uint64_t k = 1;
  std::vector<Index> cur = image;
  auto identity = [&](const std::vector<Index>& v) {
    for (Index i = 0; i < v.size(); ++i)
      if (v[i] != i) return false;
    return true;
  };
  while (!identity(cur)) {
    for (auto& v : cur) v = image[v];
    ++k;
  }
  return k;
}

Automorphism Automorphism::compose(const Automorphism& other) const {
  Automorphism out{parent, std::vector<Index>(image.size())};
  for (Index i = 0; i < image.size(); ++i) out.image[i] = image[other.image[i]];
  return out;
}

Automorphism Automorphism::power(std::uint64_t e) const {
  Automorphism acc{parent, std::vector<Index>(image.size())};
  std::iota(acc.image.begin(), acc.image.end(), Index{0});
  for (std::uint64_t i = 0; i < e; ++i) acc = compose(acc);
  return acc;
}

bool Automorphism::is_identity() const {
  for (Index i = 0; i < image.size(); ++i)
    if (image[i] != i) return false;
  return true;
}

std::optional<Automorphism> automorphism_from_images(const CayleyGroup& g, const std::vector<Index>& gens,
                                                     const std::vector<Index>& images) {
  if (gens.size() != images.size()) throw std::invalid_argument("generator and image counts differ");
  std::vector<Index> pi, queue;
  std::vector<char> hit;
  if (!extend(g, gens, images, pi, queue, hit)) return std::nullopt;
  return Automorphism{&g, std::move(pi)};
}

void for_each_automorphism(const CayleyGroup& g, const std::vector<Index>& gens,
                           const std::function<bool(const Automorphism&)>& fn) {
  if (closure_elems(g, gens).size() != g.order()) throw std::invalid_argument("generators do not generate the group");
  std::vector<std::vector<Index>> candidates(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const std::uint64_t o = g.element_order(gens[k]);
    for (Index e = 0; e < g.order(); ++e)
      if (g.element_order(e) == o) candidates[k].push_back(e);
  }
  std::vector<std::size_t> pos(gens.size(), 0);
  std::vector<Index> images(gens.size()), pi, queue;
  std::vector<char> hit;
  while (true) {
    for (std::size_t k = 0; k < gens.size(); ++k) images[k] = candidates[k][pos[k]];
    if (extend(g, gens, images, pi, queue, hit)) {
      if (!fn(Automorphism{&g, pi})) return;
    }
    std::size_t k = gens.size();
    while (k > 0) {
      --k;
      if (++pos[k] < candidates[k].size()) break;
      pos[k] = 0;
      if (k == 0) return;
    }
    if (gens.empty()) return;
  }
}

AutGroupInfo automorphism_group(const CayleyGroup& g, const std::vector<Index>& gens, std::uint64_t cap) {
  if (g.order() > cap) throw std::invalid_argument("automorphism enumeration above the cap");
  AutGroupInfo info;
  info.generators = gens;
  for_each_automorphism(g, gens, [&](const Automorphism& a) {
    ++info.order;
    if (!info.sample_order3) {
      const std::uint64_t o = a.order();
      if (o % 3 == 0) info.sample_order3 = a.power(o / 3);
    }
    return true;
  });
  info.is_two_group = is_power_of_two(info.order);
  return info;
}

AutGroupInfo automorphism_group(const CayleyGroup& g, std::uint64_t cap) {
  if (g.order() > cap) throw std::invalid_argument("automorphism enumeration above the cap");
  return automorphism_group(g, small_generating_set(g), cap);
}

std::vector<Index> small_generating_set(const CayleyGroup& g) {
  const Index n = g.order();
  if (n == 1) return {};
  for (Index i = 0; i < n; ++i)
    if (g.element_order(i) == n) return {i};
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (closure_elems(g, {i, j}).size() == n) return {i, j};
  std::vector<Index> gens;
  std::vector<Index> cur{g.identity()};
  for (Index i = 0; i < n && cur.size() < n; ++i) {
    if (std::binary_search(cur.begin(), cur.end(), i)) continue;
    gens.push_back(i);
    cur = closure_elems(g, gens);
  }
  return gens;
}

std::vector<Index> abelian_basis(const AbelianType& t) {
  std::vector<Index> out(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    std::uint64_t idx = 1;
    for (std::size_t j = k + 1; j < t.size(); ++j) idx *= t[j];
    out[k] = static_cast<Index>(idx);
  }
  return out;
}

bool abelian_aut_is_two_group(const AbelianType& t) {
  for (auto f : t)
    if (!is_power_of_two(f) || f < 2) throw std::invalid_argument("expected an abelian 2-group type");
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (t[i] == t[j]) return false;
  return true;
}

SubgroupRef fixed_points(const CayleyGroup& g, const Automorphism& alpha) {
  SubgroupRef h;
  h.parent = &g;
  for (Index i = 0; i < g.order(); ++i)
    if (alpha(i) == i) h.elements.push_back(i);
  h.generators = h.elements;
  return h;
}

AutomizerInfo automizer(const CayleyGroup& g, const SubgroupRef& q) {
  AutomizerInfo info;
  info.normalizer_order = normalizer(g, q).size();
  info.centralizer_order = centralizer(g, q.elements).size();
  info.order = info.normalizer_order / info.centralizer_order;
  info.is_two_group = is_power_of_two(info.order);
  return info;
}

AutomizerStructure automizer_structure(const CayleyGroup& g, const SubgroupRef& q) {
  const SubgroupRef nq = normalizer(g, q);
  std::map<std::vector<Index>, Index> perm_id;
  std::vector<std::vector<Index>> perms;
  for (Index t : nq.elements) {
    std::vector<Index> img;
    for (Index e : q.elements) img.push_back(g.conjugate(t, e));
    if (perm_id.emplace(img, static_cast<Index>(perms.size())).second) perms.push_back(img);
  }
  // compose as maps on positions of q
  auto pos = [&](Index e) {
    return static_cast<Index>(std::lower_bound(q.elements.begin(), q.elements.end(), e) - q.elements.begin());
  };
  const Index m = static_cast<Index>(perms.size());
  std::vector<Index> table(static_cast<std::size_t>(m) * m);
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b) {
      std::vector<Index> c(q.size());
      for (std::size_t i = 0; i < q.size(); ++i) c[i] = perms[a][pos(perms[b][i])];
      table[static_cast<std::size_t>(a) * m + b] = perm_id.at(c);
    }
  Index ident = perm_id.at(q.elements);
  CayleyGroup a(m, std::move(table), ident);
  const SubgroupRef syl = sylow_two_subgroup(a);
  std::vector<Index> core = syl.elements;
  for (Index t = 0; t < a.order(); ++t) {
    auto c = conjugate_set(a, syl.elements, t);
    std::vector<Index> meet;
    std::set_intersection(core.begin(), core.end(), c.begin(), c.end(), std::back_inserter(meet));
    core = std::move(meet);
  }
  AutomizerStructure out;
  out.order = m;
  out.o2_order = core.size();
  out.quotient_order = m / core.size();
  SubgroupRef o2;
  o2.parent = &a;
  o2.elements = core;
  out.quotient_nonabelian = !quotient(a, o2).is_abelian();
  return out;
}

SubgroupRef sylow_two_subgroup(const CayleyGroup& g) {
  std::uint64_t target = 1;
  for (std::uint64_t n = g.order(); n % 2 == 0; n /= 2) target *= 2;
  SubgroupRef p = subgroup_closure(g, {});
  while (p.size() < target) {
    const SubgroupRef np = normalizer(g, p);
    bool grown = false;
    for (Index t : np.elements) {
      if (p.contains(t) || !is_power_of_two(g.element_order(t))) continue;
      auto gens = p.generators;
      gens.push_back(t);
      p = subgroup_closure(g, gens);
      grown = true;
      break;
    }
    if (!grown) throw std::logic_error("Sylow 2-subgroup construction stalled");
  }
  return p;
}

FusionReport frobenius_two_nilpotent(const CayleyGroup& g, std::uint64_t cap) {
  if (g.order() > cap) throw std::invalid_argument("fusion analysis above the cap");
  FusionReport rep;
  const SubgroupRef s = sylow_two_subgroup(g);
  std::map<std::vector<Index>, SubgroupRef> classes;
  for (auto& q : all_subgroups(g, s)) {
    if (q.size() == 1) continue;
    auto key = class_key(g, q.elements);
    auto it = classes.find(key);
    if (it == classes.end() || q.elements < it->second.elements) classes[key] = q;
  }
  std::vector<SubgroupRef> reps;
  for (auto& [k, q] : classes) reps.push_back(q);
  std::sort(reps.begin(), reps.end(), [](const SubgroupRef& a, const SubgroupRef& b) {
    return a.size() != b.size() ? a.size() < b.size() : a.elements < b.elements;
  });
  for (auto& q : reps) {
    const auto a = automizer(g, q);
    rep.automizer_orders.emplace_back(q, a.order);
    if (!a.is_two_group && rep.two_nilpotent) {
      rep.two_nilpotent = false;
      rep.witness = q;
    }
  }
  return rep;
}

std::vector<SubgroupRef> fcentric_classes(const CayleyGroup& g, const SubgroupRef& s) {
  std::map<std::vector<Index>, std::vector<SubgroupRef>> classes;
  for (auto& q : all_subgroups(g, s)) classes[class_key(g, q.elements)].push_back(q);
  std::vector<SubgroupRef> out;
  for (auto& [key, members] : classes) {
    bool centric = true;
    for (const auto& r : members) {
      for (Index t : s.elements) {
        if (r.contains(t)) continue;
        bool commutes = true;
        for (Index e : r.elements) {
          if (g.mul(t, e) != g.mul(e, t)) {
            commutes = false;
            break;
          }
        }
        if (commutes) {
          centric = false;
          break;
        }
      }
      if (!centric) break;
    }
    if (centric) {
      auto best = std::min_element(members.begin(), members.end(), [](const SubgroupRef& a, const SubgroupRef& b) {
        return a.elements < b.elements;
      });
      out.push_back(*best);
    }
  }
  std::sort(out.begin(), out.end(), [](const SubgroupRef& a, const SubgroupRef& b) {
    return a.size() != b.size() ? a.size() < b.size() : a.elements < b.elements;
  });
  return out;
}

std::uint64_t h1_units_char2(const CayleyGroup& g, std::uint64_t cap) {
  if (g.order() > cap) throw std::invalid_argument("group above the cap");
  return odd_part(g.order() / derived_subgroup(g).size());
}

GluingH1 gluing_h1_incidence(std::uint64_t modulus, std::uint64_t multiplier) {
  if (modulus < 2) throw std::invalid_argument("module order must be at least 2");
  const std::uint64_t coeff = (multiplier + modulus - 1) % modulus;  // (multiplier - 1) d = 0
  GluingH1 out;
  out.solutions = std::gcd(coeff, modulus);
  out.trivial = out.solutions == 1;
  return out;
}

}  // namespace mna
