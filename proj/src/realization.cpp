#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mna/decomp.hpp"

namespace mna {

namespace {

long long mod(long long a, long long n) { return ((a % n) + n) % n; }

int log2_exact(std::uint64_t v) {
  int k = 0;
  while ((std::uint64_t{1} << k) < v) ++k;
  if ((std::uint64_t{1} << k) != v) throw std::logic_error("expected a power of two");
  return k;
}

bool is_pow2(std::uint64_t v) { return v && !(v & (v - 1)); }

using Perm4 = std::array<int, 4>;
const Perm4 kIdentity{1, 2, 3, 4};
const Perm4 kV12{2, 1, 4, 3};  // (12)(34)
const Perm4 kV13{3, 4, 1, 2};  // (13)(24)
const Perm4 kV14{4, 3, 2, 1};  // (14)(23)

bool in_v4(const Perm4& p) { return p == kIdentity || p == kV12 || p == kV13 || p == kV14; }

// The V4 character that is -1 on (12)(34) and (13)(24); stable under the default 4-cycle.
int theta(const Perm4& p) { return (p == kV12 || p == kV13) ? -1 : 1; }

std::vector<int> conjugacy_classes(const CayleyGroup& g, const std::vector<Index>& gens) {
  std::vector<int> cls(g.order(), -1);
  int next = 0;
  for (Index s = 0; s < g.order(); ++s) {
    if (cls[s] >= 0) continue;
    std::vector<Index> queue{s};
    cls[s] = next;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (Index w : gens) {
        const Index t = g.conjugate(w, queue[i]);
        if (cls[t] < 0) {
          cls[t] = next;
          queue.push_back(t);
        }
      }
    ++next;
  }
  return cls;
}

CycloColumnFamily family_from_values(const std::string& label, const NfElement& u, int k, int phi, bool central,
                                     const std::vector<int>& heights, const std::vector<Cyclo>& values) {
  CycloColumnFamily f;
  f.label = label;
  f.u = u;
  f.k_level = k;
  f.phi = phi;
  f.central = central;
  f.heights = heights;
  for (const Cyclo& v : values) f.coeffs.push_back(v.restrict_to(k));
  return f;
}

}  // namespace

RealizedBlock realize_block_rs1(int r) {
  if (r < 2) throw std::invalid_argument("realize_block_rs1: r must be at least 2");
  RealizedBlock b;
  b.r = r;
  b.group = build_a4_semidirect(r);
  const CayleyGroup& g = b.group.group;
  const Index n = g.order();
  const Index m = Index{1} << r;
  const GroupParams p{r, 1};

  // D(r,1) inside G via x -> xt*yt, y -> yt; then c = x^2 is central in G.
  const Index gx = g.mul(b.group.xt, b.group.yt);
  const Index gy = b.group.yt;
  const Index gz = g.mul(g.inv(g.mul(gx, gy)), g.mul(gy, gx));
  b.d_to_g.assign(p.order(), 0);
  for (const NfElement& e : all_elements(p))
    b.d_to_g[element_index(p, e)] = g.mul(g.mul(g.power(gx, e.a), g.power(gy, e.b)), g.power(gz, e.c));
  for (const NfElement& e : all_elements(p))
    for (const NfElement& f : all_elements(p))
      if (b.d_to_g[element_index(p, multiply(p, e, f))] != g.mul(b.d_to_g[element_index(p, e)], b.d_to_g[element_index(p, f)]))
        throw std::logic_error("realize_block_rs1: D does not embed");
  {
    auto sorted = b.d_to_g;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::logic_error("realize_block_rs1: embedding is not injective");
  }

  const Index rho = b.group.element({2, 3, 1, 4}, 0);
  b.class_of = conjugacy_classes(g, {b.group.xt, b.group.yt, rho});

  auto perm_of = [&](Index e) { return b.group.perms[e / m]; };
  auto h_of = [&](Index e) { return static_cast<long long>(e % m); };

  // Characters: height 0 (linear, then induced of degree 3), then height 1 (degree 2).
  for (Index j = 0; j < m; ++j) {
    std::vector<Cyclo> vals;
    for (Index e = 0; e < n; ++e) vals.push_back(Cyclo::monomial(r, static_cast<long long>(j) * h_of(e)));
    b.char_values.push_back(std::move(vals));
    b.char_labels.push_back("lin" + std::to_string(j));
  }
  {
    // Induction from the Sylow subgroup P = V4 x| <t>: accumulate, per g, how often w^-1 g w lands on each element of P.
    const long long p_order = 4LL * m;
    std::vector<std::vector<std::pair<Index, long long>>> landing(n);
    std::vector<long long> count(n);
    for (Index e = 0; e < n; ++e) {
      std::fill(count.begin(), count.end(), 0);
      for (Index w = 0; w < n; ++w) {
        const Index t = g.mul(g.mul(g.inv(w), e), w);
        if (in_v4(perm_of(t))) ++count[t];
      }
      for (Index t = 0; t < n; ++t)
        if (count[t]) landing[e].push_back({t, count[t]});
    }
    for (Index j = 0; j < m; ++j) {
      std::vector<Cyclo> vals;
      for (Index e = 0; e < n; ++e) {
        Cyclo v(r);
        for (const auto& [t, c] : landing[e])
          v += Cyclo::monomial(r, static_cast<long long>(j) * h_of(t), theta(perm_of(t)) * c);
        vals.push_back(v.exact_div(p_order));
      }
      b.char_values.push_back(std::move(vals));
      b.char_labels.push_back("ind" + std::to_string(j));
    }
  }
  for (Index mm = 0; mm < m / 2; ++mm) {
    std::vector<Cyclo> vals;
    for (Index e = 0; e < n; ++e) {
      if (h_of(e) % 2 == 1) {
        vals.emplace_back(r);
      } else {
        vals.push_back(Cyclo::monomial(r, static_cast<long long>(mm) * h_of(e), in_v4(perm_of(e)) ? 2 : -1));
      }
    }
    b.char_values.push_back(std::move(vals));
    b.char_labels.push_back("two" + std::to_string(mm));
  }

  for (const auto& vals : b.char_values) {
    if (!vals[0].is_integer() || vals[0].constant() <= 0) throw std::logic_error("bad character degree");
    long long deg = vals[0].constant(), h = 0;
    while (deg % 2 == 0) {
      deg /= 2;
      ++h;
    }
    // |G|_2 = |D|, so the height is nu(chi(1))
    b.heights.push_back(static_cast<int>(h));
  }

  // Brauer characters on {1, rho}: phi1 = (1, 1), phi2 = (2, -1).
  const std::size_t k = b.char_values.size();
  b.decomposition = IntMatrix(k, 2);
  for (std::size_t chi = 0; chi < k; ++chi) {
    const Cyclo& at1 = b.char_values[chi][g.identity()];
    const Cyclo& atr = b.char_values[chi][rho];
    if (!at1.is_integer() || !atr.is_integer()) throw std::logic_error("irrational value at a 2-regular element");
    const long long diff = at1.constant() - atr.constant();
    if (diff % 3 != 0) throw std::logic_error("decomposition numbers are not integral");
    const long long d2 = diff / 3, d1 = atr.constant() + d2;
    b.decomposition.at(chi, 0) = static_cast<long>(d1);
    b.decomposition.at(chi, 1) = static_cast<long>(d2);
  }
  b.cartan = b.decomposition.transpose() * b.decomposition;

  b.ts = t_set_rs1(r);
  for (const auto& entry : b.ts.entries) {
    const NfElement& u = entry.element;
    if (u == nf_identity()) continue;
    const Index gu = b.d_to_g[element_index(p, u)];
    const int kk = log2_exact(element_order(p, u));
    const bool central = is_central(p, u);
    const std::string label = format_element(u);
    if (entry.l_value == 2) {
      for (Index w : {b.group.xt, b.group.yt, rho})
        if (g.mul(w, gu) != g.mul(gu, w)) throw std::logic_error("element of <c> is not central in G");
      const Index gur = g.mul(gu, rho);
      std::vector<Cyclo> d1, d2;
      for (std::size_t chi = 0; chi < k; ++chi) {
        const Cyclo v2 = (b.char_values[chi][gu] - b.char_values[chi][gur]).exact_div(3);
        d2.push_back(v2);
        d1.push_back(b.char_values[chi][gur] + v2);
      }
      b.families.push_back(family_from_values(label + ":phi1", u, kk, 1, central, b.heights, d1));
      b.families.push_back(family_from_values(label + ":phi2", u, kk, 2, central, b.heights, d2));
    } else {
      const auto cent = centralizer(g, {gu});
      if (!is_pow2(cent.size())) throw std::logic_error("centralizer of " + label + " is not a 2-group");
      std::vector<Cyclo> d;
      for (std::size_t chi = 0; chi < k; ++chi) d.push_back(b.char_values[chi][gu]);
      b.families.push_back(family_from_values(label, u, kk, 0, central, b.heights, d));
    }
  }
  return b;
}

OrthogonalityReport check_orthogonality_table(const RealizedBlock& b) {
  OrthogonalityReport rep;
  const CayleyGroup& g = b.group.group;
  const GroupParams p{b.r, 1};
  const long long d = b.r + 2;

  // Ordinary columns as a family at u = 1.
  std::vector<CycloColumnFamily> fams;
  for (int phi = 1; phi <= 2; ++phi) {
    CycloColumnFamily f;
    f.label = "1:phi" + std::to_string(phi);
    f.u = nf_identity();
    f.k_level = 0;
    f.phi = phi;
    f.central = true;
    f.heights = b.heights;
    for (std::size_t chi = 0; chi < b.decomposition.rows(); ++chi)
      f.coeffs.push_back({b.decomposition.at(chi, static_cast<std::size_t>(phi - 1)).get_si()});
    fams.push_back(std::move(f));
  }
  fams.insert(fams.end(), b.families.begin(), b.families.end());

  auto image = [&](const NfElement& u) { return b.d_to_g[element_index(p, u)]; };

  for (std::size_t x = 0; x < fams.size(); ++x)
    for (std::size_t y = x; y < fams.size(); ++y) {
      const auto& fu = fams[x];
      const auto& fv = fams[y];
      // Galois exponents gamma with u ~ v^gamma in G.
      std::vector<long long> gammas;
      const long long modulus = 1LL << fu.k_level;
      if (fu.k_level == fv.k_level) {
        const Index gu = image(fu.u), gv = image(fv.u);
        for (long long gam = 1; gam < std::max(modulus, 2LL); gam += 2)
          if (b.class_of[gu] == b.class_of[g.power(gv, gam)]) gammas.push_back(gam);
      }
      for (std::size_t i = 0; i < fu.width(); ++i)
        for (std::size_t j = 0; j < fv.width(); ++j) {
          long long expected = 0;
          std::string why;
          if (gammas.size() > 1) {
            why = "subsection fused with a nontrivial Galois conjugate";
            expected = -1;
          } else if (gammas.size() == 1) {
            long long magnitude = 0;
            if (fu.phi == 0 || fv.phi == 0) {
              magnitude = (fu.phi == 0 && fv.phi == 0) ? (1LL << (d - fu.k_level + (fu.central ? 1 : 0))) : 0;
            } else {
              const long long c = b.cartan.at(static_cast<std::size_t>(fu.phi - 1), static_cast<std::size_t>(fv.phi - 1)).get_si();
              magnitude = fu.k_level == 0 ? c : (c << 1) >> fu.k_level;
            }
            if (fu.k_level <= 1) {
              expected = magnitude;
            } else {
              const long long t = mod(static_cast<long long>(j) * gammas[0] - static_cast<long long>(i), modulus);
              if (t == 0) expected = magnitude;
              if (t == modulus / 2) expected = -magnitude;
            }
          }
          const long long got = inner_product(fu, i, fv, j);
          ++rep.pairs_checked;
          if (got != expected || !why.empty()) {
            if (rep.mismatches++ == 0) {
              std::ostringstream os;
              os << "(" << fu.label << ", a" << i << ") . (" << fv.label << ", a" << j << ") = " << got
                 << ", expected " << expected << (why.empty() ? "" : " (" + why + ")");
              rep.first_mismatch = os.str();
            }
          }
        }
    }
  return rep;
}

RealizationReport verify_realized_block(const RealizedBlock& b) {
  RealizationReport rep;
  const CayleyGroup& g = b.group.group;
  const GroupParams p{b.r, 1};
  const int r = b.r;
  const std::size_t k = b.char_values.size();
  std::ostringstream detail;

  // Orthonormality of the character table over conjugacy classes.
  {
    std::map<int, std::pair<Index, long long>> classes;  // id -> (representative, size)
    for (Index e = 0; e < g.order(); ++e) {
      auto [it, fresh] = classes.try_emplace(b.class_of[e], e, 0);
      ++it->second.second;
    }
    bool ok = classes.size() == k;
    for (std::size_t a = 0; a < k && ok; ++a)
      for (std::size_t c = a; c < k && ok; ++c) {
        Cyclo s(r);
        for (const auto& [id, rs] : classes)
          s += b.char_values[a][rs.first] * b.char_values[c][rs.first].conj() * rs.second;
        const long long want = a == c ? g.order() : 0;
        if (!s.is_integer() || s.constant() != want) ok = false;
      }
    rep.characters_orthonormal = ok;
    if (!ok) detail << "character table not orthonormal; ";
  }

  std::uint64_t k0 = 0, k1 = 0;
  for (int h : b.heights) (h == 0 ? k0 : k1) += 1;
  rep.degrees_match = k == 5 * (std::size_t{1} << (r - 1)) && k0 == (std::uint64_t{1} << (r + 1)) &&
                      k1 == (std::uint64_t{1} << (r - 1)) && b.decomposition.cols() == 2 && b.cartan == cartan_rs1(r);
  if (!rep.degrees_match) detail << "invariants differ: k=" << k << " k0=" << k0 << " k1=" << k1 << "; ";

  auto image = [&](const NfElement& u) { return b.d_to_g[element_index(p, u)]; };
  {
    std::vector<int> two_classes;
    for (Index e = 0; e < g.order(); ++e)
      if (is_pow2(g.element_order(e))) two_classes.push_back(b.class_of[e]);
    std::sort(two_classes.begin(), two_classes.end());
    two_classes.erase(std::unique(two_classes.begin(), two_classes.end()), two_classes.end());
    std::vector<int> hit;
    for (const auto& e : b.ts.entries) hit.push_back(b.class_of[image(e.element)]);
    std::sort(hit.begin(), hit.end());
    rep.subsections_match = std::adjacent_find(hit.begin(), hit.end()) == hit.end() && hit == two_classes;
    if (!rep.subsections_match) detail << "representatives do not meet each 2-class once; ";
  }

  std::map<std::pair<std::uint32_t, int>, std::size_t> by_key;
  for (std::size_t i = 0; i < b.families.size(); ++i)
    by_key[{element_index(p, b.families[i].u), b.families[i].phi}] = i;

  rep.galois_twist_matches = true;
  for (const auto& f : b.families) {
    const long long modulus = 1LL << f.k_level;
    for (long long gam = 1; gam < modulus; gam += 2) {
      NfElement v = power(p, f.u, gam);
      if (!is_central(p, v)) v.c = 0;
      auto it = by_key.find({element_index(p, v), f.phi});
      if (it == by_key.end() || galois_twist(f, gam).coeffs != b.families[it->second].coeffs) {
        if (rep.galois_twist_matches) detail << "twist of " << f.label << " by " << gam << " differs; ";
        rep.galois_twist_matches = false;
      }
    }
  }

  rep.shapes_match = true;
  for (const auto& cf : build_columns_rs1(r, CartanCase::second)) {
    auto it = by_key.find({element_index(p, cf.u), cf.phi});
    if (it == by_key.end() || !shape_match(b.families[it->second], cf)) {
      if (rep.shapes_match) detail << "family " << cf.label << " does not match its canonical shape; ";
      rep.shapes_match = false;
    }
  }

  rep.divisibility_ok = rep.parity_ok = rep.support_ok = true;
  for (const auto& f : b.families) {
    if (f.phi != 0) continue;
    if (f.central) {
      if (!check_divisibility_heights(f)) {
        if (rep.divisibility_ok) detail << "divisibility fails at " << f.label << "; ";
        rep.divisibility_ok = false;
      }
      if (!support_count(f, r).closes) {
        if (rep.support_ok) detail << "support count does not close at " << f.label << "; ";
        rep.support_ok = false;
      }
    } else if (!height_parity_consistent(f)) {
      if (rep.parity_ok) detail << "height parity fails at " << f.label << "; ";
      rep.parity_ok = false;
    }
  }

  // Sum over T of |D| m_{chi chi}^{(u)}, scaled by L = det(C) |D| to stay integral.
  {
    const long long order_d = 1LL << (r + 2);
    const long long det = b.cartan.determinant().get_si();
    const long long scale = det * order_d;
    const long long c00 = b.cartan.at(0, 0).get_si(), c01 = b.cartan.at(0, 1).get_si(), c11 = b.cartan.at(1, 1).get_si();
    const Index rho = b.group.element({2, 3, 1, 4}, 0);
    rep.brauer_sum_ok = scale % det == 0;
    for (std::size_t chi = 0; chi < k && rep.brauer_sum_ok; ++chi) {
      Cyclo total(r);
      auto quad = [&](const Cyclo& d1, const Cyclo& d2) {
        // (d1, d2) adj(C) (d1, d2)^*
        return d1 * d1.conj() * c11 - (d1 * d2.conj() + d2 * d1.conj()) * c01 + d2 * d2.conj() * c00;
      };
      const Cyclo q1 = Cyclo::integer(r, b.decomposition.at(chi, 0).get_si());
      const Cyclo q2 = Cyclo::integer(r, b.decomposition.at(chi, 1).get_si());
      total += quad(q1, q2) * (order_d * (scale / det));
      for (const auto& e : b.ts.entries) {
        if (e.element == nf_identity()) continue;
        const Index gu = image(e.element);
        const Cyclo& val = b.char_values[chi][gu];
        if (e.l_value == 2) {
          const Cyclo d2 = (val - b.char_values[chi][g.mul(gu, rho)]).exact_div(3);
          const Cyclo d1 = b.char_values[chi][g.mul(gu, rho)] + d2;
          total += quad(d1, d2) * (order_d * (scale / det));
        } else {
          const long long cent = static_cast<long long>(centralizer(g, {gu}).size());
          total += val * val.conj() * (order_d * (scale / cent));
        }
      }
      if (!(total == Cyclo::integer(r, scale * order_d))) {
        detail << "Brauer sum fails at " << b.char_labels[chi] << "; ";
        rep.brauer_sum_ok = false;
      }
    }
  }

  {
    const NfElement c = *b.ts.canonical_c;
    auto f1 = by_key.find({element_index(p, c), 1});
    auto f2 = by_key.find({element_index(p, c), 2});
    rep.contributions_ok = false;
    if (f1 != by_key.end() && f2 != by_key.end()) {
      const auto diag = contributions_at_c(r, CartanCase::second, b.families[f1->second], b.families[f2->second]);
      rep.contributions_ok = diag.valuations_ok;
    }
    if (!rep.contributions_ok) detail << "contributions at c violate the valuation pattern; ";
  }

  rep.orthogonality = check_orthogonality_table(b);
  if (rep.orthogonality.mismatches) detail << rep.orthogonality.first_mismatch << "; ";
  rep.detail = detail.str();
  return rep;
}

}  // namespace mna
