#include "mna/checks.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "mna/generic_group.hpp"
#include "mna/intforms.hpp"
#include "mna/morphisms.hpp"
#include "mna/nf_group.hpp"

namespace mna {

namespace {

std::uint64_t pow2(int e) { return std::uint64_t{1} << e; }
std::uint64_t odd_part(std::uint64_t v) {
  while (v && v % 2 == 0) v /= 2;
  return v;
}

Json divisors_json(const std::vector<mpz_class>& d) {
  Json a = Json::array();
  for (const auto& v : d) a.push_back(v.get_str());
  return a;
}

std::vector<mpz_class> divisors(std::initializer_list<long long> v) {
  std::vector<mpz_class> out;
  for (long long x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

Json type_json(const AbelianType& t) {
  Json a = Json::array();
  for (auto f : t) a.push_back(f);
  return a;
}

// Collects expectations; any failed one turns the report into a fail with a witness.
class Ctx {
 public:
  explicit Ctx(CheckReport& rep) : rep_(rep) {}

  void expect(bool ok, const std::string& what, Json witness = nullptr) {
    ++checked_;
    if (ok) return;
    Json f = Json::object();
    f["expectation"] = what;
    if (!witness.is_null()) f["witness"] = std::move(witness);
    rep_.data["failures"].push_back(std::move(f));
    failed_.push_back(what);
  }

  Json& data() { return rep_.data; }

  void skip(const std::string& reason) {
    skipped_ = true;
    rep_.details = reason;
  }

  void finish(const std::string& summary) {
    if (skipped_) {
      rep_.status = CheckStatus::skip;
      return;
    }
    if (failed_.empty()) {
      rep_.status = CheckStatus::pass;
      rep_.details = summary + " (" + std::to_string(checked_) + " expectations)";
    } else {
      rep_.status = CheckStatus::fail;
      std::string d = "failed: " + failed_.front();
      if (failed_.size() > 1) d += " (+" + std::to_string(failed_.size() - 1) + " more)";
      rep_.details = d;
    }
  }

  bool skipped() const { return skipped_; }

 private:
  CheckReport& rep_;
  std::vector<std::string> failed_;
  std::uint64_t checked_ = 0;
  bool skipped_ = false;
};

long long param(const CheckParams& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw UsageError("missing parameter --" + key);
  return it->second;
}

int param_r(const CheckParams& p, int min = 1) {
  const long long r = param(p, "r");
  if (r < min || r > 30) throw UsageError("parameter r must lie in [" + std::to_string(min) + ", 30]");
  return static_cast<int>(r);
}

int param_s(const CheckParams& p, int min = 1) {
  const long long s = param(p, "s");
  if (s < min || s > 30) throw UsageError("parameter s must lie in [" + std::to_string(min) + ", 30]");
  return static_cast<int>(s);
}

GroupParams param_rs(const CheckParams& p) {
  GroupParams g{param_r(p), param_s(p)};
  if (g.s > g.r) throw UsageError("parameters must satisfy r >= s");
  return g;
}

bool over_cap(Ctx& c, std::uint64_t order, std::uint64_t cap, const std::string& what) {
  if (order <= cap) return false;
  c.skip(what + " of order " + std::to_string(order) + " exceeds the cap " + std::to_string(cap));
  return true;
}

bool r_at_least(Ctx& c, int r, int min) {
  if (r >= min) return true;
  c.skip("requires r >= " + std::to_string(min));
  return false;
}

// nf_group

void check_nf_arithmetic(Ctx& c, const CheckParams& ps) {
  const GroupParams p = param_rs(ps);
  if (over_cap(c, p.order(), pow2(12), "D(r,s)")) return;
  const auto elems = all_elements(p);
  const NfElement e = nf_identity();
  bool id_ok = true, inv_ok = true, comm_ok = true, closed_inv_ok = true;
  for (const auto& g : elems) {
    id_ok = id_ok && multiply(p, g, e) == g && multiply(p, e, g) == g;
    const NfElement gi = inverse(p, g);
    inv_ok = inv_ok && multiply(p, g, gi) == e && multiply(p, gi, g) == e;
    closed_inv_ok = closed_inv_ok && gi == make_element(p, -static_cast<long long>(g.a), -static_cast<long long>(g.b),
                                                        -static_cast<long long>(g.c) + static_cast<long long>(g.a) * g.b);
  }
  if (p.order() <= pow2(9))
    for (const auto& g : elems)
      for (const auto& h : elems) {
        const NfElement k = commutator(p, g, h);
        comm_ok = comm_ok && (k == e || k == nf_z());
      }
  std::mt19937_64 rng(0x6e66u + static_cast<unsigned>(p.r * 16 + p.s));
  std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
  bool assoc = true;
  for (int t = 0; t < 10000 && assoc; ++t) {
    const auto &a = elems[pick(rng)], &b = elems[pick(rng)], &d = elems[pick(rng)];
    assoc = multiply(p, multiply(p, a, b), d) == multiply(p, a, multiply(p, b, d));
  }
  c.expect(id_ok, "identity law");
  c.expect(inv_ok, "inverse law");
  c.expect(closed_inv_ok, "inverse closed form (-a, -b, -c + ab)");
  c.expect(comm_ok, "commutators lie in <z>");
  c.expect(assoc, "associativity on 10^4 seeded triples");
  c.expect(multiply(p, nf_y(), nf_x()) == make_element(p, 1, 1, 1), "yx = xyz");
  c.expect(commutator(p, nf_x(), nf_y()) == nf_z(), "[x,y] = z");
  c.expect(element_order(p, nf_x()) == pow2(p.r), "order(x) = 2^r");
  c.expect(element_order(p, nf_y()) == pow2(p.s), "order(y) = 2^s");
  c.data()["order"] = p.order();
}

void check_center(Ctx& c, const CheckParams& ps) {
  const GroupParams p = param_rs(ps);
  if (over_cap(c, p.order(), pow2(12), "D(r,s)")) return;
  const auto cs = characteristic_subgroups(p);
  AbelianType expected;
  for (std::uint64_t f : {pow2(p.r - 1), pow2(p.s - 1), std::uint64_t{2}})
    if (f > 1) expected.push_back(f);
  std::sort(expected.rbegin(), expected.rend());
  std::uint64_t central = 0;
  bool predicate = true;
  for (const auto& g : all_elements(p)) {
    const bool z = is_central(p, g);
    central += z;
    predicate = predicate && z == (g.a % 2 == 0 && g.b % 2 == 0);
  }
  c.expect(cs.center == expected, "Z(D) has type C_{2^(r-1)} x C_{2^(s-1)} x C_2", type_json(cs.center));
  c.expect(central == pow2(p.r + p.s - 1), "|Z(D)| = 2^(r+s-1)", central);
  c.expect(predicate, "central iff a and b are even");
  c.expect(cs.derived == AbelianType{2} && cs.derived_is_z, "D' = <z> of order 2", type_json(cs.derived));
  c.expect(cs.frattini_equals_center, "Phi(D) = Z(D)");
  c.data()["center"] = type_json(cs.center);
  c.data()["derived"] = type_json(cs.derived);
  c.data()["frattini"] = type_json(cs.frattini);
  c.data()["omega_of_center"] = type_json(cs.omega_of_center);
}

void check_maxsubgroups(Ctx& c, const CheckParams& ps) {
  const GroupParams p = param_rs(ps);
  if (!r_at_least(c, p.r, 2)) return;
  if (over_cap(c, p.order(), pow2(12), "D(r,s)")) return;
  const auto ms = maximal_subgroups(p);
  auto norm = [](AbelianType t) {
    std::sort(t.rbegin(), t.rend());
    t.erase(std::remove(t.begin(), t.end(), std::uint64_t{1}), t.end());
    return t;
  };
  const AbelianType m1 = norm({pow2(p.r - 1), pow2(p.s), 2});
  const AbelianType m23 = norm({pow2(p.r), pow2(p.s - 1), 2});
  std::multiset<AbelianType> got, want{m1, m23, m23};
  Json types = Json::array();
  bool abelian = true, index2 = true;
  for (const auto& m : ms) {
    got.insert(m.type);
    types.push_back(type_json(m.type));
    abelian = abelian && m.abelian;
    index2 = index2 && m.elements.size() * 2 == p.order();
  }
  c.expect(ms.size() == 3, "exactly three maximal subgroups");
  c.expect(abelian, "every maximal subgroup is abelian");
  c.expect(index2, "every maximal subgroup has index 2");
  c.expect(got == want, "types {<x^2,y,z>, <x,y^2,z>, <xy,x^2,z>} match", types);
  c.data()["types"] = types;
}

void check_classcount(Ctx& c, const CheckParams& ps) {
  const GroupParams p = param_rs(ps);
  if (over_cap(c, p.order(), pow2(12), "D(r,s)")) return;
  const std::uint64_t n = conjugacy_class_count(p);
  const std::uint64_t formula = 5 * pow2(p.r + p.s) / 4;
  c.expect(n == formula, "class count 5 * 2^(r+s-2)", n);
  c.expect(class_count_formula(p) == formula, "closed form agrees");
  // Non-central classes are {g, gz}.
  bool pairs = true;
  const auto elems = all_elements(p);
  for (const auto& g : elems) {
    if (is_central(p, g)) continue;
    std::set<NfElement> cls;
    for (const auto& h : elems) cls.insert(multiply(p, multiply(p, h, g), inverse(p, h)));
    pairs = pairs && cls == std::set<NfElement>{g, multiply(p, g, nf_z())};
    if (p.order() > pow2(9)) break;
  }
  c.expect(pairs, "non-central classes are {g, gz}");
  const std::uint64_t linear = pow2(p.r + p.s);
  c.expect((p.order() - linear) / 4 + linear == formula, "degree bookkeeping (|D| - 2^(r+s))/4 + 2^(r+s)");
  c.data()["classes"] = n;
}

// generic_group

void check_nf_table(Ctx& c, const CheckParams& ps) {
  const GroupParams p = param_rs(ps);
  if (over_cap(c, p.order(), pow2(9), "D(r,s) table comparison")) return;
  const CayleyGroup g = build_nf_group(p);
  bool agree = true;
  const auto elems = all_elements(p);
  for (const auto& a : elems)
    for (const auto& b : elems)
      agree = agree && g.mul(nf_to_index(p, a), nf_to_index(p, b)) == nf_to_index(p, multiply(p, a, b));
  c.expect(g.order() == p.order(), "table order 2^(r+s+1)");
  c.expect(agree, "table product equals normal-form product");
  c.expect(g.check_associativity(100000, 7), "associativity");
  c.expect(presentation_match(g, nf_to_index(p, nf_x()), nf_to_index(p, nf_y()), p), "defining copy satisfies the presentation");
}

void check_quotients(Ctx& c, const CheckParams& ps) {
  const GroupParams p = param_rs(ps);
  if (over_cap(c, p.order(), pow2(10), "D(r,s)")) return;
  const CayleyGroup g = build_nf_group(p);
  const auto zq = quotient(g, subgroup_closure(g, {nf_to_index(p, nf_z())}));
  AbelianType want{pow2(p.r), pow2(p.s)};
  c.expect(zq.is_abelian(), "D/<z> is abelian");
  if (zq.is_abelian()) c.expect(abelian_invariants(zq) == want, "D/<z> has type [2^r, 2^s]", type_json(abelian_invariants(zq)));
  if (p.s == 1 && p.r >= 2) {
    const auto cq = quotient(g, subgroup_closure(g, {nf_to_index(p, make_element(p, 2, 0, 0))}));
    std::uint64_t exponent = 1;
    for (Index i = 0; i < cq.order(); ++i) exponent = std::max(exponent, cq.element_order(i));
    c.expect(cq.order() == 8 && !cq.is_abelian() && exponent == 4, "D/<x^2> is dihedral of order 8");
  }
  const auto whole = quotient(g, whole_group(g));
  c.expect(whole.order() == 1, "D/D is trivial");
}

void check_subgroup_classes(Ctx& c, const CheckParams& ps) {
  const GroupParams p = param_rs(ps);
  if (over_cap(c, p.order(), pow2(9), "D(r,s) lattice")) return;
  const CayleyGroup g = build_nf_group(p);
  const auto maxes = subgroup_classes(g, p.order() / 2, pow2(9));
  c.expect(maxes.size() == 3, "three classes of index-2 subgroups", maxes.size());
  const auto top = subgroup_classes(g, p.order(), pow2(9));
  c.expect(top.size() == 1 && top[0].size() == p.order(), "order filter |G| returns G");
  if (p.s == 1 && p.r >= 2) {
    std::uint64_t e8 = 0;
    for (const auto& h : subgroup_classes(g, 8, pow2(9))) e8 += is_elementary_abelian(g, h);
    c.expect(e8 == 1, "a unique elementary abelian subgroup of order 8", e8);
  }
}

bool presentation_any(const SemidirectA4& sd, int r) {
  const auto& g = sd.group;
  std::vector<Index> v4;
  for (const auto& sigma : std::vector<std::array<int, 4>>{{1, 2, 3, 4}, {2, 1, 4, 3}, {3, 4, 1, 2}, {4, 3, 2, 1}})
    v4.push_back(sd.element(sigma, 0));
  for (Index v : v4)
    for (Index w : v4)
      if (w != g.identity() && presentation_match(g, g.mul(sd.xt, v), w, GroupParams{r, 1})) return true;
  return false;
}

void check_construction(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!r_at_least(c, r, 2)) return;
  if (over_cap(c, 12 * pow2(r), pow2(12), "A4 x| C_{2^r}")) return;
  const auto sd = build_a4_semidirect(r);
  const auto& g = sd.group;
  c.expect(g.order() == 12 * pow2(r), "|G| = 12 * 2^r");
  c.expect(g.commutator(sd.xt, sd.yt) == sd.element({4, 3, 2, 1}, 0), "[xt, yt] = (14)(23)");
  c.expect(subgroup_closure(g, {sd.xt, sd.yt}).size() == pow2(r + 2), "<xt, yt> has order 2^(r+2)");
  c.expect(presentation_match(g, sd.xt, sd.yt, GroupParams{r, 1}), "<xt, yt> satisfies the D(r,1) presentation");
  c.expect(presentation_match(g, g.mul(sd.xt, sd.yt), sd.yt, GroupParams{r, 1}), "<xt yt, yt> satisfies it too");
  c.expect(!presentation_match(g, sd.xt, sd.xt, GroupParams{r, 1}), "control: (xt, xt) is rejected");
  // Every 4-cycle of S4 yields a group containing D(r,1) as a Sylow subgroup.
  std::array<int, 4> perm{1, 2, 3, 4};
  std::uint64_t cycles = 0, matched = 0;
  do {
    std::array<int, 4> seen{};
    int len = 0, pt = 0;
    while (!seen[pt]) {
      seen[pt] = 1;
      pt = perm[pt] - 1;
      ++len;
    }
    if (len != 4) continue;
    ++cycles;
    matched += presentation_any(build_a4_semidirect(r, pow2(12), perm), r);
  } while (std::next_permutation(perm.begin(), perm.end()));
  c.expect(cycles == 6 && matched == 6, "all six 4-cycles give a Sylow subgroup D(r,1)", matched);
}

// morphisms

void check_aut2group(Ctx& c, const CheckParams& ps) {
  const GroupParams p = param_rs(ps);
  if (p.r + p.s > 7) {
    c.skip("exhaustive enumeration is capped at r + s <= 7");
    return;
  }
  const CayleyGroup g = build_nf_group(p);
  const auto info = automorphism_group(g, {nf_to_index(p, nf_x()), nf_to_index(p, nf_y())});
  const bool want = p.r != p.s || p.r == 1;
  c.expect(info.is_two_group == want, "Aut(D) is a 2-group iff r != s or r = s = 1", info.order);
  c.expect(info.sample_order3.has_value() == !want, "an order-3 automorphism exists iff Aut(D) is not a 2-group");
  if (p.r == 1) c.expect(info.order == 8, "|Aut(D8)| = 8", info.order);
  if (p.r == p.s && p.r >= 2) {
    const auto alpha = standard_order3_automorphism(g, p.r);
    c.expect(alpha.order() == 3, "x -> y, y -> x^-1 y^-1 has order 3");
  }
  c.data()["aut_order"] = info.order;
  c.data()["is_two_group"] = info.is_two_group;
}

// |Aut| of an abelian p-group from its exponents (Hillar and Rhea).
std::uint64_t abelian_aut_order(const std::vector<int>& exps_in, std::uint64_t prime = 2) {
  std::vector<int> e = exps_in;
  std::sort(e.begin(), e.end());
  const std::size_t n = e.size();
  auto pw = [&](std::uint64_t b, std::uint64_t k) {
    std::uint64_t v = 1;
    while (k--) v *= b;
    return v;
  };
  std::uint64_t out = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    std::size_t d = 0, cc = n + 1;
    for (std::size_t l = 1; l <= n; ++l)
      if (e[l - 1] == e[k - 1]) {
        d = std::max(d, l);
        cc = std::min(cc, l);
      }
    out *= pw(prime, d) - pw(prime, k - 1);
    out *= pw(prime, static_cast<std::uint64_t>(e[k - 1]) * (n - d));
    out *= pw(prime, static_cast<std::uint64_t>(e[k - 1] - 1) * (n - cc + 1));
  }
  return out;
}

void partitions(int n, int max, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, max); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

void check_abelian_aut(Ctx& c, const CheckParams&) {
  std::vector<std::vector<int>> types;
  for (int n = 1; n <= 6; ++n) {
    std::vector<int> cur;
    partitions(n, n, cur, types);
  }
  Json rows = Json::array();
  std::uint64_t brute = 0;
  for (const auto& exps : types) {
    AbelianType t;
    for (int e : exps) t.push_back(pow2(e));
    const std::uint64_t formula = abelian_aut_order(exps);
    const bool predicate = abelian_aut_is_two_group(t);
    c.expect(predicate == (odd_part(formula) == 1), "predicate matches the |Aut| formula for " + format_type(t));
    // Brute force when the candidate image space is small.
    const CayleyGroup g = build_abelian(t);
    const auto basis = abelian_basis(t);
    double space = 1;
    for (Index b : basis) {
      std::uint64_t cnt = 0;
      for (Index e = 0; e < g.order(); ++e) cnt += g.element_order(e) == g.element_order(b);
      space *= static_cast<double>(cnt);
    }
    Json row = Json::object();
    row["type"] = type_json(t);
    row["aut_order"] = formula;
    if (space <= 2e6) {
      const auto info = automorphism_group(g, basis);
      c.expect(info.order == formula, "brute-force |Aut| equals the formula for " + format_type(t), info.order);
      c.expect(info.is_two_group == predicate, "brute-force 2-group test for " + format_type(t));
      row["brute_force"] = true;
      ++brute;
    } else {
      row["brute_force"] = false;
    }
    rows.push_back(row);
  }
  c.data()["types"] = rows;
  c.data()["brute_forced"] = brute;
}

void check_fixedpoints(Ctx& c, const CheckParams& ps) {
  const int s = param_s(ps);
  if (s > 4) {
    c.skip("enumeration is capped at s <= 4");
    return;
  }
  AbelianType t{pow2(s), 2, 2};
  if (s == 1) t = {2, 2, 2};
  const CayleyGroup g = build_abelian(t);
  std::uint64_t order3 = 0;
  bool cyclic = true;
  Json witness = nullptr;
  for_each_automorphism(g, abelian_basis(t), [&](const Automorphism& a) {
    if (a.order() != 3) return true;
    ++order3;
    const auto fp = fixed_points(g, a);
    bool has_gen = false;
    for (Index e : fp.elements) has_gen = has_gen || g.element_order(e) == pow2(s);
    if (fp.size() != pow2(s) || !has_gen) {
      cyclic = false;
      witness = fp.size();
    }
    return true;
  });
  c.expect(order3 > 0, "order-3 automorphisms exist");
  c.expect(cyclic, "every order-3 automorphism fixes a cyclic subgroup of order 2^s", witness);
  c.data()["order3_automorphisms"] = order3;
}

void check_fusion(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!r_at_least(c, r, 2)) return;
  if (r > 4) {
    c.skip("subgroup enumeration is capped at r <= 4");
    return;
  }
  const auto sd = build_a4_semidirect(r);
  const auto rep = frobenius_two_nilpotent(sd.group);
  c.expect(!rep.two_nilpotent, "A4 x| C_{2^r} is not 2-nilpotent");
  c.expect(rep.witness.has_value(), "a witness subgroup is reported");
  const CayleyGroup a4 = build_alternating4();
  const auto ra = frobenius_two_nilpotent(a4);
  c.expect(!ra.two_nilpotent && ra.witness && ra.witness->size() == 4 && automizer(a4, *ra.witness).order == 3,
           "A4: Klein four witness with automizer of order 3");
  const GroupParams p{r, 1};
  const CayleyGroup d = build_nf_group(p);
  c.expect(frobenius_two_nilpotent(d).two_nilpotent, "D(r,1) itself is 2-nilpotent");
  if (rep.witness) c.data()["witness_order"] = rep.witness->size();
}

void check_fcentric(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!r_at_least(c, r, 2)) return;
  if (r > 4) {
    c.skip("subgroup enumeration is capped at r <= 4");
    return;
  }
  const auto sd = build_a4_semidirect(r);
  const auto& g = sd.group;
  const Index gx = g.mul(sd.xt, sd.yt), gy = sd.yt, gz = g.commutator(gx, gy);
  const auto s = subgroup_closure(g, {gx, gy});
  const auto m1 = subgroup_closure(g, {g.mul(gx, gx), gy, gz});
  const auto m1_key = class_key(g, m1.elements);
  const auto fc = fcentric_classes(g, s);
  Json rows = Json::array();
  std::multiset<std::uint64_t> sizes;
  bool odd_only_m1 = true, m1_found = false;
  for (const auto& q : fc) {
    const auto a = automizer(g, q);
    const bool is_m1 = class_key(g, q.elements) == m1_key;
    m1_found = m1_found || is_m1;
    odd_only_m1 = odd_only_m1 && ((odd_part(a.order) == 3) == is_m1) && odd_part(a.order) <= 3;
    sizes.insert(q.size());
    Json row = Json::object();
    row["order"] = q.size();
    row["automizer_order"] = a.order;
    row["is_m1"] = is_m1;
    rows.push_back(row);
  }
  const std::multiset<std::uint64_t> want{pow2(r + 1), pow2(r + 1), pow2(r + 1), pow2(r + 2)};
  c.expect(fc.size() == 4, "four F-centric classes", fc.size());
  c.expect(sizes == want, "orders 2^(r+1) three times and 2^(r+2)");
  c.expect(m1_found, "M1 = <x^2, y, z> is F-centric");
  c.expect(odd_only_m1, "automizer has odd part 3 exactly at the M1 class", rows);
  c.expect(automizer(g, s).order == 4, "Aut_G(D) has order 4");
  const auto st = automizer_structure(g, m1);
  c.data()["classes"] = rows;
  c.data()["m1_automizer_order"] = st.order;
  c.data()["m1_automizer_o2"] = st.o2_order;
}

void check_h1_units(Ctx& c, const CheckParams&) {
  const std::uint64_t s3 = h1_units_char2(build_symmetric(3));
  const std::uint64_t a4 = h1_units_char2(build_alternating4());
  const std::uint64_t v4 = h1_units_char2(build_abelian({2, 2}));
  c.expect(s3 == 1, "Hom(S3, F^x) is trivial", s3);
  c.expect(a4 == 3, "Hom(A4, F^x) has order 3", a4);
  c.expect(v4 == 1, "Hom(C2 x C2, F^x) is trivial", v4);
  c.data()["S3"] = s3;
  c.data()["A4"] = a4;
  c.data()["C2xC2"] = v4;
}

void check_gluing(Ctx& c, const CheckParams&) {
  const auto def = gluing_h1_incidence();
  const auto control = gluing_h1_incidence(3, 1);
  const auto z5 = gluing_h1_incidence(5, 2);
  c.expect(def.trivial, "d = 2d in Z/3 forces d = 0");
  c.expect(!control.trivial && control.solutions == 3, "control d = d has a free solution space");
  c.expect(z5.trivial, "d = 2d in Z/5 forces d = 0");
  c.data()["default_solutions"] = def.solutions;
  c.data()["control_solutions"] = control.solutions;
}

// subsections

void check_tset_rs1(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!r_at_least(c, r, 2)) return;
  if (over_cap(c, pow2(r + 2), pow2(12), "D(r,1)")) return;
  const GroupParams p{r, 1};
  const auto ts = t_set_rs1(r);
  std::uint64_t l2 = 0;
  std::set<NfElement> elems;
  for (const auto& e : ts.entries) {
    elems.insert(e.element);
    if (e.element != nf_identity() && e.l_value == 2) ++l2;
  }
  bool center_in = true;
  for (const auto& g : all_elements(p))
    if (is_central(p, g)) center_in = center_in && elems.count(g);
  c.expect(ts.entries.size() == pow2(r + 1) && t_set_size_rs1(r) == pow2(r + 1), "|T| = 2^(r+1)");
  c.expect(elems.size() == ts.entries.size(), "entries are distinct");
  c.expect(l2 == pow2(r - 1) - 1, "l = 2 exactly on <c> minus 1", l2);
  c.expect(center_in, "Z(D) lies in T");
  c.expect(ts.canonical_c && *ts.canonical_c == make_element(p, 2, 0, 0), "c = x^2");
  c.data()["set"] = subsection_set_json(ts);
}

struct ReqSContext {
  CayleyGroup d;
  Automorphism alpha;
};

void check_tset_req_s(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!r_at_least(c, r, 2)) return;
  if (over_cap(c, pow2(2 * r + 1), pow2(11), "D(r,r)")) return;
  const CayleyGroup d = build_nf_group(GroupParams{r, r});
  const Automorphism alpha = standard_order3_automorphism(d, r);
  const auto ts = t_set_req_s(r, alpha);
  const std::uint64_t want = (5 * pow2(2 * (r - 1)) + 4) / 3;
  std::uint64_t l3 = 0;
  bool l3_at_z = true;
  for (const auto& e : ts.entries)
    if (e.element != nf_identity() && e.l_value == 3) {
      ++l3;
      l3_at_z = l3_at_z && e.element == nf_z();
    }
  c.expect((5 * pow2(2 * (r - 1)) + 4) % 3 == 0, "3 divides 5 * 4^(r-1) + 4");
  c.expect(ts.entries.size() == want && t_set_size_req_s(r) == want, "|T| = (5 * 4^(r-1) + 4) / 3", ts.entries.size());
  c.expect(l3 == 1 && l3_at_z, "l = 3 exactly at z");
  c.expect(ts.central_fixed_points == 2, "alpha fixes exactly {1, z} in Z(D)", ts.central_fixed_points);
  c.expect(ts.central_three_orbits == (pow2(2 * r - 1) - 2) / 3, "(2^(2r-1) - 2) / 3 three-element orbits",
           ts.central_three_orbits);
  const auto z = nf_to_index(GroupParams{r, r}, nf_z());
  const auto center_elems = center(d).elements;
  std::uint64_t fixed = 0;
  for (Index e : center_elems) fixed += alpha(e) == e;
  c.expect(fixed == 2 && alpha(z) == z, "fixed points of alpha on Z(D) are {1, z}");
  c.data()["set"] = subsection_set_json(ts);
}

void check_kminusl_rs1(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!r_at_least(c, r, 2)) return;
  if (over_cap(c, pow2(r + 2), pow2(12), "D(r,1)")) return;
  const auto res = k_minus_l_check(t_set_rs1(r));
  c.expect(res.match, "sum of l over T minus 1 matches 2^(r+1) + 2^(r-1) - 2", res.sum);
  c.expect(res.sum == invariants_rs1(r).k - invariants_rs1(r).l, "sum equals k(B) - l(B)");
  c.data()["sum"] = res.sum;
  c.data()["closed_form"] = res.closed_form;
}

void check_kminusl_req_s(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!r_at_least(c, r, 2)) return;
  if (over_cap(c, pow2(2 * r + 1), pow2(11), "D(r,r)")) return;
  const CayleyGroup d = build_nf_group(GroupParams{r, r});
  const auto res = k_minus_l_check(t_set_req_s(r, standard_order3_automorphism(d, r)));
  c.expect(res.match, "sum matches (5 * 4^(r-1) + 7) / 3", res.sum);
  c.expect(res.sum == invariants_req_s_special(r).k - 3, "sum equals k(B) - 3");
  c.data()["sum"] = res.sum;
  c.data()["closed_form"] = res.closed_form;
}

void check_galois_orbits(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!r_at_least(c, r, 2)) return;
  if (over_cap(c, pow2(r + 2), pow2(12), "D(r,1)")) return;
  const auto g = galois_orbit_structure(t_set_rs1(r));
  std::vector<std::uint64_t> want{1, 1, 1, 1};
  for (int e = 1; e <= r - 1; ++e) want.insert(want.end(), {pow2(e), pow2(e)});
  std::sort(want.begin(), want.end());
  const std::uint64_t total = std::accumulate(g.height0_family_sizes.begin(), g.height0_family_sizes.end(), std::uint64_t{0});
  c.expect(g.column_orbit_count == static_cast<std::uint64_t>(3 * r + 2), "3r + 2 column orbits", g.column_orbit_count);
  c.expect(g.height0_family_sizes == want, "height-0 family sizes 1,1,1,1,2,2,...,2^(r-1),2^(r-1)");
  c.expect(g.height0_family_sizes.size() == static_cast<std::size_t>(2 * (r + 1)), "2(r+1) families");
  c.expect(total == pow2(r + 1), "family sizes sum to k0(B)");
  c.data()["set_orbit_count"] = g.set_orbit_count;
  c.data()["set_lengths"] = g.set_lengths;
  c.data()["column_orbit_count"] = g.column_orbit_count;
  c.data()["column_lengths"] = g.column_lengths;
}

void check_galois_pairs(Ctx& c, const CheckParams&) {
  const CayleyGroup d = build_nf_group(GroupParams{2, 2});
  const auto ts = t_set_req_s(2, standard_order3_automorphism(d, 2));
  const auto n = galois_pair_count(ts);
  c.expect(n == 2, "two pairs of 2-conjugate subsections in D(2,2)", n);
  c.data()["pairs"] = n;
}

void check_chains(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!r_at_least(c, r, 2)) return;
  if (r > 6) {
    c.skip("chain enumeration is capped at r <= 6");
    return;
  }
  const auto cc = elem_abelian_chains(GroupParams{r, 1});
  c.expect(cc.max_length == 3, "longest chain has length 3", cc.max_length);
  c.expect(cc.e8_class_count == 1, "unique elementary abelian subgroup of order 8", cc.e8_class_count);
  c.expect(cc.e8_is_standard, "it is <x^(2^(r-1)), y, z>");
  c.expect(cc.long_chains_end_at_e8, "every length-3 chain ends there");
  c.data()["chain_counts_by_length"] = cc.chain_counts_by_length;
}

// invariants

Json invariants_json(const BlockInvariants& inv) {
  Json j = Json::object();
  j["d"] = inv.d;
  j["k"] = inv.k;
  j["k_by_height"] = inv.k_by_height;
  j["l"] = inv.l;
  j["source"] = to_string(inv.source);
  return j;
}

void check_inv_rs1(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!r_at_least(c, r, 2)) return;
  if (r > 10) {
    c.skip("class enumeration is capped at |D| <= 2^12");
    return;
  }
  const auto inv = invariants_rs1(r);
  c.expect(inv.k == 5 * pow2(r - 1) && inv.k_by_height.size() >= 2 && inv.k_by_height[0] == pow2(r + 1) &&
               inv.k_by_height[1] == pow2(r - 1) && inv.l == 2 && inv.d == r + 2,
           "(k, k0, k1, l) = (5 * 2^(r-1), 2^(r+1), 2^(r-1), 2)");
  c.expect(is_consistent(inv), "record is consistent");
  c.expect(inv.k == conjugacy_class_count(GroupParams{r, 1}), "k(B) = |Irr(D)|");
  c.expect(inv.k - inv.l == k_minus_l_check(t_set_rs1(r)).sum, "k - l matches the subsection sum");
  const auto q = check_inequalities(inv, pow2(inv.d - 1));
  c.expect(q.robinson && q.robinson_equality, "k <= k0 + 4 k1 = |D|");
  c.expect(q.olsson, "k0 <= |D : D'|");
  c.expect(q.high_heights_vanish, "k_i = 0 for i >= 4");
  c.data()["invariants"] = invariants_json(inv);
}

void check_inv_req_s(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!r_at_least(c, r, 2)) return;
  if (over_cap(c, pow2(2 * r + 1), pow2(11), "D(r,r)")) return;
  const auto inv = invariants_req_s_special(r);
  const std::uint64_t q4 = pow2(2 * (r - 1));
  c.expect((5 * q4 + 16) % 3 == 0 && (4 * q4 + 8) % 3 == 0 && (q4 + 8) % 3 == 0, "the fractions are integral");
  c.expect(inv.k == (5 * q4 + 16) / 3 && inv.k_by_height.size() >= 2 && inv.k_by_height[0] == (4 * q4 + 8) / 3 &&
               inv.k_by_height[1] == (q4 + 8) / 3 && inv.l == 3 && inv.d == 2 * r + 1,
           "closed forms for k, k0, k1, l");
  c.expect(inv.source == InvariantSource::special_case, "tagged special-case");
  c.expect(is_consistent(inv), "record is consistent");
  const CayleyGroup d = build_nf_group(GroupParams{r, r});
  c.expect(inv.k - 3 == k_minus_l_check(t_set_req_s(r, standard_order3_automorphism(d, r))).sum,
           "k - 3 matches the subsection sum");
  const auto q = check_inequalities(inv, pow2(inv.d - 1));
  c.expect(q.robinson, "Robinson bound");
  c.expect(q.olsson, "Olsson bound");
  c.expect(q.kw_bound.value_or(false), "k <= (|D| + 16) / 3");
  c.expect(q.high_heights_vanish, "k_i = 0 for i >= 4");
  c.data()["invariants"] = invariants_json(inv);
}

void check_inv_eb3(Ctx& c, const CheckParams& ps) {
  const int s = param_s(ps, 0);
  const auto inv = invariants_eB3(s);
  c.expect(inv.k == pow2(s + 2) && inv.k_by_height.size() >= 1 && inv.k_by_height[0] == inv.k && inv.l == 3,
           "k = k0 = 2^(s+2), l = 3");
  c.expect(inv.k - inv.l == pow2(s + 2) - 3, "k - l = 2^(s+2) - 3");
  c.expect(pow2(s) + 3 * (pow2(s) - 1) == pow2(s + 2) - 3, "subsection count 2^s + 3 (2^s - 1) agrees");
  c.expect(is_consistent(inv), "record is consistent");
  const auto q = check_inequalities(inv, pow2(inv.d));
  c.expect(q.robinson && q.olsson, "Robinson and Olsson bounds");
  c.data()["invariants"] = invariants_json(inv);
}

void check_bound_req_s(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!r_at_least(c, r, 2)) return;
  const auto b = invariants_req_s_general(r);
  c.expect(b.source == InvariantSource::bound_only, "general blocks carry bounds only");
  c.expect(b.k_upper == (pow2(2 * r + 1) + 16) / 3, "k <= (|D| + 16) / 3", b.k_upper);
  c.expect(b.l_lower == 3, "l >= 3");
  c.expect(invariants_req_s_special(r).k <= b.k_upper, "the special case respects the bound");
  c.data()["k_upper"] = b.k_upper;
  c.data()["l_lower"] = b.l_lower;
}

void check_inequality_controls(Ctx& c, const CheckParams&) {
  auto fake = invariants_rs1(2);
  fake.k_by_height = {16, 0};
  fake.k = 16;
  c.expect(!check_inequalities(fake, 8).olsson, "k0 = 2^(r+2) violates the Olsson bound");
  auto big = invariants_req_s_special(2);
  big.k_by_height = {8, 9};
  big.k = 17;
  const auto q = check_inequalities(big, 16);
  c.expect(q.kw_bound.has_value() && !*q.kw_bound, "k = 17 > 16 violates the r = s bound");
  c.expect(!check_inequalities(invariants_rs1(2), 8).kw_bound.has_value(), "the r = s bound is not applied to rs1");
}

// intforms

void check_eledivs(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!r_at_least(c, r, 2)) return;
  const auto cand = cartan_candidates_rs1(r);
  const long long f = static_cast<long long>(pow2(r - 1));
  c.expect(cand.retained == IntMatrix({{3 * f, f}, {f, 3 * f}}), "retained candidate 2^(r-1) [[3,1],[1,3]]");
  c.expect(cand.excluded == IntMatrix({{f, 0}, {0, 8 * f}}), "excluded candidate 2^(r-1) [[1,0],[0,8]]");
  c.expect(cand.retained_snf == divisors({f, static_cast<long long>(pow2(r + 2))}), "SNF (2^(r-1), |D|)",
           divisors_json(cand.retained_snf));
  c.expect(cand.retained.determinant() == cand.excluded.determinant() && cand.retained.determinant() == mpz_class(static_cast<long>(8 * f * f)),
           "both candidates have determinant 8 * 4^(r-1)");
  c.expect(congruent_2x2(cartan_rs1(r), cand.retained), "2^(r-1) [[4,2],[2,3]] is congruent to the retained candidate");
  c.expect(!congruent_2x2(cand.excluded, cand.retained), "the two candidates are not congruent");
  c.data()["snf"] = divisors_json(cand.retained_snf);
}

void check_snf_examples(Ctx& c, const CheckParams&) {
  const auto a = smith_normal_form(IntMatrix{{6, 2}, {2, 6}});
  const auto b = smith_normal_form(cartan_req_s(2).c_bar);
  const auto i3 = smith_normal_form(IntMatrix::identity(3));
  c.expect(a == divisors({2, 16}), "SNF [[6,2],[2,6]] = (2, 16)", divisors_json(a));
  c.expect(b == divisors({1, 1, 16}), "SNF Cbar(2) = (1, 1, 16)", divisors_json(b));
  c.expect(i3 == divisors({1, 1, 1}), "SNF I3 = (1, 1, 1)");
  const auto z = smith_normal_form(IntMatrix{{2, 4}, {3, 6}});
  c.expect(z == divisors({1, 0}), "a singular matrix keeps a zero divisor", divisors_json(z));
}

IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng) {
  IntMatrix u = IntMatrix::identity(n);
  std::uniform_int_distribution<int> idx(0, static_cast<int>(n) - 1), coef(-3, 3), kind(0, 2);
  for (int step = 0; step < 6; ++step) {
    const auto i = static_cast<std::size_t>(idx(rng)), j = static_cast<std::size_t>(idx(rng));
    IntMatrix e = IntMatrix::identity(n);
    const int k = kind(rng);
    if (k == 0 && i != j) e.at(i, j) = coef(rng);
    if (k == 1) e.at(i, i) = -1;
    if (k == 2 && i != j) {
      e.at(i, i) = 0;
      e.at(j, j) = 0;
      e.at(i, j) = 1;
      e.at(j, i) = 1;
    }
    u = u * e;
  }
  return u;
}

void check_snf_fuzz(Ctx& c, const CheckParams&) {
  std::mt19937_64 rng(20240531);
  const std::vector<IntMatrix> mats{IntMatrix{{6, 2}, {2, 6}}, cartan_req_s(2).c_bar, cartan_r2_final().matrix,
                                    IntMatrix{{4, 6, 2}, {2, 8, 10}}};
  std::uint64_t rounds = 0;
  for (const auto& m : mats) {
    const auto base = smith_normal_form(m);
    for (int t = 0; t < 100; ++t) {
      const IntMatrix x = random_unimodular(m.rows(), rng) * m * random_unimodular(m.cols(), rng);
      const auto got = smith_normal_form(x);
      c.expect(got == base, "SNF invariant under unimodular operations", x.to_string());
      ++rounds;
    }
  }
  c.data()["rounds"] = rounds;
}

QuadForm qf(long long a, long long b, long long c) {
  return QuadForm{mpz_class(static_cast<long>(a)), mpz_class(static_cast<long>(b)), mpz_class(static_cast<long>(c))};
}

Json forms_json(const std::vector<QuadForm>& fs) {
  Json a = Json::array();
  for (const auto& f : fs) a.push_back(f.to_string());
  return a;
}

void check_qf_classes(Ctx& c, const CheckParams& ps) {
  const long long disc = ps.count("disc") ? ps.at("disc") : -32;
  const long long res = ((disc % 4) + 4) % 4;
  if (disc >= 0 || (res != 0 && res != 1)) throw UsageError("disc must be negative and congruent to 0 or 1 mod 4");
  const auto prim = reduced_classes(disc, true);
  const auto all = reduced_classes(disc, false);
  for (const auto& f : all) c.expect(f.is_reduced() && f.disc() == static_cast<long>(disc), "every listed form is reduced of the right disc", f.to_string());
  if (disc == -32) {
    c.expect(prim == std::vector<QuadForm>{{1, 0, 8}, {3, 2, 3}}, "primitive classes {(1,0,8), (3,2,3)}", forms_json(prim));
    c.expect(all.size() == 3 && std::find(all.begin(), all.end(), QuadForm{2, 0, 4}) != all.end(),
             "all classes add (2,0,4)", forms_json(all));
  }
  if (disc == -4) c.expect(prim == std::vector<QuadForm>{{1, 0, 1}}, "class number 1", forms_json(prim));
  c.data()["primitive"] = forms_json(prim);
  c.data()["all"] = forms_json(all);
}

void check_qf_reduce(Ctx& c, const CheckParams&) {
  auto red = [](long long a, long long b, long long cc) { return reduce_qf(qf(a, b, cc)).reduced; };
  c.expect(red(8, 8, 3) == QuadForm{3, 2, 3}, "(8,8,3) reduces to (3,2,3)");
  c.expect(red(1, 0, 8) == QuadForm{1, 0, 8}, "(1,0,8) is reduced");
  c.expect(red(4, 4, 3) == QuadForm{3, 2, 3}, "(4,4,3) reduces to (3,2,3)");
  // Every primitive positive definite form of discriminant -32 with small coefficients.
  const QuadForm principal{1, 0, 8};
  std::uint64_t forms = 0, nonprincipal = 0;
  for (long long a = 1; a <= 50; ++a)
    for (long long b = -50; b <= 50; b += 2) {
      if ((b * b + 32) % (4 * a) != 0) continue;
      const long long cc = (b * b + 32) / (4 * a);
      if (cc > 50) continue;
      const QuadForm q = qf(a, b, cc);
      if (!q.primitive()) continue;
      ++forms;
      const auto rd = reduce_qf(q);
      const bool witness_ok = transform_form(q, rd.transform) == rd.reduced && rd.transform.determinant() == 1;
      c.expect(witness_ok, "unimodular witness reproduces the reduced form", q.to_string());
      c.expect(rd.reduced == QuadForm{1, 0, 8} || rd.reduced == QuadForm{3, 2, 3}, "reduces into a listed class", q.to_string());
      const bool np = !properly_equivalent(q, principal);
      nonprincipal += np;
      c.expect(np == (rd.reduced == QuadForm{3, 2, 3}), "(3,2,3) iff not equivalent to the principal form", q.to_string());
    }
  c.data()["forms"] = forms;
  c.data()["nonprincipal"] = nonprincipal;
}

void check_qf_congruence(Ctx& c, const CheckParams&) {
  const IntMatrix target{{3, 1}, {1, 3}};
  const auto a = congruent_transform(IntMatrix{{8, 4}, {4, 3}}, IntMatrix{{1, -1}, {0, 1}});
  const auto b = congruent_transform(IntMatrix{{4, 2}, {2, 3}}, IntMatrix{{0, 1}, {-1, 1}});
  c.expect(a == target, "S [[8,4],[4,3]] S^T = [[3,1],[1,3]]", a.to_string());
  c.expect(b == target, "S [[4,2],[2,3]] S^T = [[3,1],[1,3]]", b.to_string());
  c.expect(congruent_transform(target, IntMatrix::identity(2)) == target, "identity transform");
  bool rejected = false;
  try {
    congruent_transform(target, IntMatrix{{2, 0}, {0, 1}});
  } catch (const std::invalid_argument&) {
    rejected = true;
  }
  c.expect(rejected, "a non-unimodular S is rejected");
}

void check_cartan_req_s(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!r_at_least(c, r, 2)) return;
  if (r > 20) {
    c.skip("capped at r <= 20");
    return;
  }
  const auto cr = cartan_req_s(r);
  const long long q = static_cast<long long>(pow2(2 * r));
  c.expect((q + 2) % 3 == 0 && (q - 1) % 3 == 0, "3 divides 4^r + 2 and 4^r - 1");
  const long long d = (q + 2) / 3, o = (q - 1) / 3;
  c.expect(cr.c_bar == IntMatrix({{d, o, o}, {o, d, o}, {o, o, d}}), "Cbar entries", cr.c_bar.to_string());
  c.expect(cr.c_bz == cr.c_bar.scaled(2), "C(b_z) = 2 Cbar");
  c.expect(cr.snf_bar == divisors({1, 1, q}), "SNF Cbar = (1, 1, 4^r)", divisors_json(cr.snf_bar));
  c.expect(cr.snf_bz == divisors({2, 2, 2 * q}), "SNF 2 Cbar = (2, 2, 2 * 4^r)", divisors_json(cr.snf_bz));
  c.expect(cr.c_bar.determinant() == mpz_class(static_cast<long>(q)), "det Cbar = 4^r");
  c.data()["c_bar"] = cr.c_bar.to_string();
}

void check_cartan_r2_final(Ctx& c, const CheckParams&) {
  const auto f = cartan_r2_final();
  c.expect(f.matrix == IntMatrix({{4, 2, 2}, {2, 4, 2}, {2, 2, 12}}), "matrix [[4,2,2],[2,4,2],[2,2,12]]");
  c.expect(f.snf == divisors({2, 2, 32}), "SNF (2, 2, 32)", divisors_json(f.snf));
  c.expect(f.matrix.determinant() == 128, "det 128");
  c.expect(f.matrix.is_symmetric() && f.matrix.is_positive_definite(), "symmetric positive definite");
}

// decomp

bool realized_in_range(Ctx& c, int r) {
  if (!r_at_least(c, r, 2)) return false;
  if (r > 6) {
    c.skip("character computations are capped at r <= 6");
    return false;
  }
  return true;
}

void check_realization(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!realized_in_range(c, r)) return;
  const auto b = realize_block_rs1(r);
  const auto rep = verify_realized_block(b);
  c.expect(rep.characters_orthonormal, "irreducible characters are orthonormal");
  c.expect(rep.degrees_match, "k, k0, k1 and l match the invariants", rep.detail);
  c.expect(rep.subsections_match, "T meets every 2-class of G once");
  c.expect(b.cartan == cartan_rs1(r), "Cartan matrix 2^(r-1) [[4,2],[2,3]]", b.cartan.to_string());
  c.data()["characters"] = b.char_labels;
  c.data()["heights"] = b.heights;
  c.data()["cartan"] = b.cartan.to_string();
}

void check_orthogonality(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!realized_in_range(c, r)) return;
  auto b = realize_block_rs1(r);
  const auto rep = check_orthogonality_table(b);
  c.expect(rep.pairs_checked > 0 && rep.mismatches == 0, "every column pair matches the orthogonality table", rep.first_mismatch);
  // Sensitivity: a single corrupted coefficient must be detected.
  auto& f = b.families.front();
  f.coeffs[0][0] += 1;
  const auto bad = check_orthogonality_table(b);
  c.expect(bad.mismatches > 0, "control: a corrupted coefficient is detected");
  c.data()["pairs_checked"] = rep.pairs_checked;
  c.data()["control_mismatches"] = bad.mismatches;
}

void check_twist(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!realized_in_range(c, r)) return;
  const auto b = realize_block_rs1(r);
  c.expect(verify_realized_block(b).galois_twist_matches, "twisted columns equal the columns of u^gamma");
  bool action = true, identity = true;
  for (const auto& f : build_columns_rs1(r, CartanCase::second)) {
    const long long m = f.k_level <= 1 ? 2 : (1LL << f.k_level);
    identity = identity && galois_twist(f, 1).coeffs == f.coeffs;
    for (long long g1 = 1; g1 < m; g1 += 2)
      for (long long g2 = 1; g2 < m; g2 += 2)
        action = action && galois_twist(f, (g1 * g2) % m).coeffs == galois_twist(galois_twist(f, g2), g1).coeffs;
  }
  c.expect(identity, "gamma = 1 acts trivially");
  c.expect(action, "twist(f, g1 g2) = twist(twist(f, g2), g1)");
  bool even_rejected = false;
  try {
    galois_twist(build_columns_rs1(r, CartanCase::second).front(), 2);
  } catch (const std::invalid_argument&) {
    even_rejected = true;
  }
  c.expect(even_rejected, "even gamma is rejected");
}

void check_shapes(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!realized_in_range(c, r)) return;
  const auto rep = verify_realized_block(realize_block_rs1(r));
  c.expect(rep.shapes_match, "realized families match the canonical shapes up to rows and signs", rep.detail);
  const auto fams = build_columns_rs1(r, CartanCase::second);
  const auto& x = fams.front();
  std::uint64_t ones = 0;
  for (std::size_t chi = 0; chi < x.num_chars(); ++chi) ones += x.coeffs[chi][0] == 1;
  c.expect(ones == 4, "a_0 of a non-central family has four entries 1");
  Json dump = Json::array();
  for (const auto& f : fams) dump.push_back(family_json(f));
  c.data()["canonical_second_case"] = dump;
}

void check_div_parity(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!realized_in_range(c, r)) return;
  const auto rep = verify_realized_block(realize_block_rs1(r));
  c.expect(rep.divisibility_ok, "realized central l = 1 families satisfy the divisibility rules");
  c.expect(rep.parity_ok, "realized non-central families: odd sum iff height 0");
  for (auto which : {CartanCase::first, CartanCase::second})
    for (const auto& f : build_columns_rs1(r, which)) {
      if (f.central && f.phi == 0) c.expect(check_divisibility_heights(f), "canonical divisibility " + f.label);
      if (!f.central) c.expect(height_parity_consistent(f), "canonical parity " + f.label);
    }
  auto bad = build_columns_rs1(r, CartanCase::second);
  for (auto& f : bad)
    if (f.central && f.phi == 0) {
      f.coeffs.back()[0] = 1;
      c.expect(!check_divisibility_heights(f), "control: a height-1 entry 1 fails divisibility");
      break;
    }
}

void check_support(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!realized_in_range(c, r)) return;
  const auto b = realize_block_rs1(r);
  c.expect(verify_realized_block(b).support_ok, "realized support count closes");
  std::vector<bool> hit(b.heights.size(), false);
  for (const auto& f : b.families)
    for (std::size_t chi = 0; chi < f.num_chars(); ++chi)
      for (long long v : f.coeffs[chi]) hit[chi] = hit[chi] || v != 0;
  c.expect(std::all_of(hit.begin(), hit.end(), [](bool h) { return h; }), "every character meets some column");
  for (const auto& f : build_columns_rs1(r, CartanCase::second)) {
    if (!f.central || f.phi != 0) continue;
    const auto sc = support_count(f, r);
    c.expect(sc.closes, "k = |D| - 3 k1 closes for " + f.label, sc.support_sum);
  }
}

void check_brauer_sum(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!realized_in_range(c, r)) return;
  c.expect(verify_realized_block(realize_block_rs1(r)).brauer_sum_ok, "sum over T of |D| m_chi_chi^(u) = |D|");
}

void check_contributions(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!realized_in_range(c, r)) return;
  c.expect(verify_realized_block(realize_block_rs1(r)).contributions_ok, "realized contributions at c have the right parity");
  for (auto which : {CartanCase::first, CartanCase::second}) {
    const auto fams = build_columns_rs1(r, which);
    for (std::size_t i = 0; i + 1 < fams.size(); ++i) {
      if (fams[i].phi != 1 || fams[i + 1].phi != 2) continue;
      const auto diag = contributions_at_c(r, which, fams[i], fams[i + 1]);
      c.expect(diag.valuations_ok, "canonical contributions " + fams[i].label + " (" + to_string(which) + ")");
      if (r == 2 && which == CartanCase::second && !diag.values.empty())
        c.expect(diag.values.front().is_integer() && diag.values.front().constant() == 3, "height-0 value 3 at r = 2");
    }
  }
}

void check_residue(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!r_at_least(c, r, 2)) return;
  c.expect(contribution_sum_residue(r) == 2, "residue 2 mod 4 contradicts |D| = 0 mod 4", contribution_sum_residue(r));
  c.expect(contribution_sum_residue(r, true) == 0, "control residue 0");
}

void check_ordinary_cartan(Ctx& c, const CheckParams& ps) {
  const int r = param_r(ps);
  if (!r_at_least(c, r, 2)) return;
  if (r > 12) {
    c.skip("capped at r <= 12");
    return;
  }
  const auto o = ordinary_cartan_check(r);
  const long long f = static_cast<long long>(pow2(r - 1));
  c.expect(o.gram == IntMatrix({{4 * f, 2 * f}, {2 * f, 3 * f}}), "gram 2^(r-1) [[4,2],[2,3]]", o.gram.to_string());
  c.expect(o.congruent_to_target, "congruent to 2^(r-1) [[3,1],[1,3]]");
  c.expect(o.snf == divisors({f, static_cast<long long>(pow2(r + 2))}), "SNF (2^(r-1), 2^(r+2))", divisors_json(o.snf));
  c.data()["gram"] = o.gram.to_string();
}

// search

void check_search(Ctx& c, SearchScenario s, const RunOptions& opts) {
  const auto res = exclusion_search_r2(s, opts.caps);
  c.data()["search"] = search_result_json(res);
  const bool complete = res.status == "complete";
  if (s == SearchScenario::req_s_r2_k14) {
    if (complete)
      c.expect(res.consistent_found == 0, "no integral columns with Cartan SNF (1,1,2,2,32) exist for k = 14",
               res.witnesses.empty() ? Json(nullptr) : Json(res.witnesses.front()));
  } else {
    if (complete || res.consistent_found > 0)
      c.expect(res.consistent_found > 0, "positive control: consistent columns exist");
  }
}

struct Entry {
  CheckInfo info;
  std::function<void(Ctx&, const CheckParams&, const RunOptions&)> run;
};

template <class F>
std::function<void(Ctx&, const CheckParams&, const RunOptions&)> plain(F f) {
  return [f](Ctx& c, const CheckParams& p, const RunOptions&) { f(c, p); };
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> all = [] {
    std::vector<Entry> e;
    auto add = [&](std::string id, std::string role, ParamGrid grid, auto fn) {
      std::vector<std::string> names;
      if (grid == ParamGrid::r) names = {"r"};
      if (grid == ParamGrid::rs) names = {"r", "s"};
      if (grid == ParamGrid::s) names = {"s"};
      e.push_back({CheckInfo{std::move(id), std::move(role), grid, names}, plain(fn)});
    };
    add("nf.arithmetic", "normal-form law: identity, inverses, associativity, yx = xyz", ParamGrid::rs, check_nf_arithmetic);
    add("lemma.center", "Z(D) = Phi(D) and D' = <z> with their types", ParamGrid::rs, check_center);
    add("lemma.maxsubgroups", "the three maximal subgroups and their abelian types", ParamGrid::rs, check_maxsubgroups);
    add("lemma.classcount", "5 * 2^(r+s-2) conjugacy classes", ParamGrid::rs, check_classcount);
    add("group.nf_table", "Cayley table of D(r,s) agrees with the normal form", ParamGrid::rs, check_nf_table);
    add("group.quotients", "D/<z> abelian of type [2^r, 2^s]; D(r,1)/<x^2> dihedral", ParamGrid::rs, check_quotients);
    add("group.subgroup_classes", "index-2 classes and the unique elementary abelian subgroup of order 8", ParamGrid::rs,
        check_subgroup_classes);
    add("prop.construction", "A4 x| C_{2^r} contains D(r,1) as a Sylow subgroup", ParamGrid::r, check_construction);
    add("lemma.aut2group", "Aut(D) is a 2-group iff r != s or r = s = 1", ParamGrid::rs, check_aut2group);
    add("lemma.abelian_aut", "Aut of an abelian 2-group is a 2-group iff exponents are distinct", ParamGrid::none,
        check_abelian_aut);
    add("lemma.fixedpoints", "order-3 automorphisms of C_{2^s} x C2 x C2 fix a cyclic group of order 2^s", ParamGrid::s,
        check_fixedpoints);
    add("prop.fusion", "the constructed fusion system is not nilpotent", ParamGrid::r, check_fusion);
    add("fusion.fcentric", "four F-centric classes; odd automizer only at M1", ParamGrid::r, check_fcentric);
    add("coh.h1_units", "Hom(G, F^x) in characteristic 2", ParamGrid::none, check_h1_units);
    add("coh.gluing", "first cohomology of the gluing incidence category vanishes", ParamGrid::none, check_gluing);
    add("lemma.tset.rs1", "subsection representatives for r > s = 1", ParamGrid::r, check_tset_rs1);
    add("lemma.tset.req_s", "subsection representatives for r = s", ParamGrid::r, check_tset_req_s);
    add("prop.kminusl.rs1", "k(B) - l(B) from the subsection sum, r > s = 1", ParamGrid::r, check_kminusl_rs1);
    add("prop.kminusl.req_s", "k(B) - l(B) from the subsection sum, r = s", ParamGrid::r, check_kminusl_req_s);
    add("thm.galois_orbits", "3r + 2 column orbits and 2(r+1) height-0 families", ParamGrid::r, check_galois_orbits);
    add("lemma.galois_pairs.r2", "two pairs of 2-conjugate subsections in D(2,2)", ParamGrid::none, check_galois_pairs);
    add("lemma.chains", "chains of elementary abelian subgroups of D(r,1)", ParamGrid::r, check_chains);
    add("thm.invariants.rs1", "k, k0, k1, l for r > s = 1 with the inequality gates", ParamGrid::r, check_inv_rs1);
    add("prop.invariants.req_s", "k, k0, k1, l in the special r = s cases", ParamGrid::r, check_inv_req_s);
    add("lemma.invariants.eB3", "k = k0 = 2^(s+2), l = 3 for the auxiliary abelian-defect block", ParamGrid::s,
        check_inv_eb3);
    add("bound.invariants.req_s", "bounds for general r = s blocks", ParamGrid::r, check_bound_req_s);
    add("gate.inequality_controls", "fabricated invariants violate the gates", ParamGrid::none, check_inequality_controls);
    add("lemma.eledivs", "Cartan candidates for r > s = 1 and their elementary divisors", ParamGrid::r, check_eledivs);
    add("snf.examples", "Smith normal form examples", ParamGrid::none, check_snf_examples);
    add("snf.fuzz", "SNF invariance under random unimodular operations", ParamGrid::none, check_snf_fuzz);
    add("qf.classes", "reduced binary forms of a discriminant", ParamGrid::none, check_qf_classes);
    add("qf.reduce", "Gauss reduction with witnesses over discriminant -32", ParamGrid::none, check_qf_reduce);
    add("qf.congruence", "congruence witnesses for [[3,1],[1,3]]", ParamGrid::none, check_qf_congruence);
    add("cartan.req_s", "Cbar and 2 Cbar with their elementary divisors", ParamGrid::r, check_cartan_req_s);
    add("cartan.r2_final", "final Cartan matrix for D(2,2)", ParamGrid::none, check_cartan_r2_final);
    add("decomp.realization", "characters and Cartan matrix of the principal block of A4 x| C_{2^r}", ParamGrid::r,
        check_realization);
    add("decomp.orthogonality", "inner products of all generalized decomposition columns", ParamGrid::r, check_orthogonality);
    add("decomp.galois_twist", "Galois twists of column families", ParamGrid::r, check_twist);
    add("decomp.shapes", "realized families against the canonical shapes", ParamGrid::r, check_shapes);
    add("decomp.divisibility_parity", "divisibility and height parity of column entries", ParamGrid::r, check_div_parity);
    add("decomp.support", "support counting k = |D| - 3 k1", ParamGrid::r, check_support);
    add("decomp.brauer_sum", "contributions over T sum to |D|", ParamGrid::r, check_brauer_sum);
    add("decomp.contributions", "contributions at c have valuation h(chi)", ParamGrid::r, check_contributions);
    add("decomp.contribution_residue", "the excluded Cartan type forces residue 2 mod 4", ParamGrid::r, check_residue);
    add("decomp.ordinary_cartan", "ordinary decomposition matrix and its Gram matrix", ParamGrid::r, check_ordinary_cartan);
    for (auto s : {SearchScenario::rs1_r2_consistency, SearchScenario::req_s_r2_k14, SearchScenario::req_s_r2_k12}) {
      const std::string role = s == SearchScenario::req_s_r2_k14 ? "exclusion of k = 14 for D(2,2)"
                               : s == SearchScenario::req_s_r2_k12 ? "positive control k = 12 for D(2,2)"
                                                                   : "positive control for D(2,1)";
      e.push_back({CheckInfo{"search." + to_string(s), role, ParamGrid::search, {}},
                   [s](Ctx& c, const CheckParams&, const RunOptions& o) { check_search(c, s, o); }});
    }
    return e;
  }();
  return all;
}

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skip: return "skip";
    case CheckStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

Json to_json(const CheckReport& r) {
  Json j = Json::object();
  j["check_id"] = r.check_id;
  Json p = Json::object();
  for (const auto& [k, v] : r.params) p[k] = v;
  j["params"] = p;
  j["status"] = to_string(r.status);
  j["details"] = r.details;
  j["data"] = r.data;
  return j;
}

Json to_json(const std::vector<CheckReport>& reports) {
  Json a = Json::array();
  for (const auto& r : reports) a.push_back(to_json(r));
  return a;
}

const std::vector<CheckInfo>& check_catalog() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

CheckReport run_check(const std::string& check_id, const CheckParams& params, const RunOptions& opts) {
  const auto& all = entries();
  auto it = std::find_if(all.begin(), all.end(), [&](const Entry& e) { return e.info.id == check_id; });
  if (it == all.end()) throw UsageError("unknown check id: " + check_id);
  for (const auto& [k, v] : params) {
    const auto& names = it->info.param_names;
    const bool allowed = std::find(names.begin(), names.end(), k) != names.end() || (check_id == "qf.classes" && k == "disc");
    if (!allowed) throw UsageError("check " + check_id + " does not take parameter " + k);
  }
  CheckReport rep;
  rep.check_id = check_id;
  rep.params = params;
  Ctx c(rep);
  try {
    it->run(c, params, opts);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& ex) {
    c.expect(false, std::string("error: ") + ex.what());
  }
  c.finish(it->info.role);
  if (rep.status == CheckStatus::pass && rep.data.contains("search") &&
      rep.data["search"]["status"] == "inconclusive" && rep.data["search"]["consistent_found"] == 0) {
    rep.status = CheckStatus::inconclusive;
    rep.details = "cap reached after " + rep.data["search"]["explored"].dump() + " nodes";
  }
  return rep;
}

std::vector<CheckReport> verify_all(int r_max, int s_max, bool include_search, unsigned threads, const RunOptions& opts) {
  std::vector<std::pair<std::string, CheckParams>> jobs;
  for (const auto& info : check_catalog()) {
    if (r_max < 2 && info.grid != ParamGrid::none && info.grid != ParamGrid::search) continue;
    switch (info.grid) {
      case ParamGrid::none: jobs.emplace_back(info.id, CheckParams{}); break;
      case ParamGrid::r:
        for (int r = 2; r <= r_max; ++r) jobs.emplace_back(info.id, CheckParams{{"r", r}});
        break;
      case ParamGrid::rs:
        for (int r = 1; r <= r_max; ++r)
          for (int s = 1; s <= std::min(r, s_max); ++s) jobs.emplace_back(info.id, CheckParams{{"r", r}, {"s", s}});
        break;
      case ParamGrid::s:
        for (int s = info.id == "lemma.invariants.eB3" ? 0 : 1; s <= s_max; ++s)
          jobs.emplace_back(info.id, CheckParams{{"s", s}});
        break;
      case ParamGrid::search:
        if (include_search) jobs.emplace_back(info.id, CheckParams{});
        break;
    }
  }
  std::vector<CheckReport> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) out[i] = run_check(jobs[i].first, jobs[i].second, opts);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

int aggregate_exit_code(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    if (r.status == CheckStatus::fail) return 1;
  return 0;
}

Json subsection_set_json(const SubsectionSet& ts) {
  Json a = Json::array();
  for (const auto& e : ts.entries) {
    Json row = Json::object();
    row["element"] = {e.element.a, e.element.b, e.element.c};
    row["l"] = e.l_value;
    row["orbit_id"] = e.orbit_id;
    a.push_back(row);
  }
  return a;
}

Json invariants_table_json(int r_max) {
  Json a = Json::array();
  for (int r = 2; r <= r_max; ++r) {
    const auto inv = invariants_rs1(r);
    Json row = Json::object();
    row["r"] = r;
    row["order"] = pow2(inv.d);
    row["k"] = inv.k;
    row["k0"] = inv.k_by_height.at(0);
    row["k1"] = inv.k_by_height.at(1);
    row["l"] = inv.l;
    a.push_back(row);
  }
  return a;
}

Json family_json(const CycloColumnFamily& f) {
  Json j = Json::object();
  j["label"] = f.label;
  j["k_level"] = f.k_level;
  j["phi"] = f.phi;
  j["heights"] = f.heights;
  j["coeffs"] = f.coeffs;
  return j;
}

Json search_result_json(const SearchResult& r) {
  Json j = Json::object();
  j["scenario"] = r.scenario;
  j["status"] = r.status;
  j["explored"] = r.explored;
  j["completions"] = r.completions;
  j["rank_deficient"] = r.rank_deficient;
  j["consistent_found"] = r.consistent_found;
  Json h = Json::object();
  for (const auto& [k, v] : r.snf_histogram) h[k] = v;
  j["snf_histogram"] = h;
  j["witnesses"] = r.witnesses;
  return j;
}

}  // namespace mna
