#pragma once

// Finite groups as indexed Cayley tables, plus the constructions needed
// around D(r,s): the defining copy, A4 x| C_{2^r}, quotients and subgroup
// lattices up to conjugacy.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mna/nf_group.hpp"

namespace mna {

using Index = std::uint32_t;

class CayleyGroup {
 public:
  CayleyGroup() = default;
  // Validates the Latin-square property and the identity; inverses are derived.
  CayleyGroup(Index n, std::vector<Index> table, Index identity, std::vector<std::string> labels = {});

  Index order() const { return n_; }
  Index identity() const { return identity_; }
  Index mul(Index g, Index h) const { return table_[static_cast<std::size_t>(g) * n_ + h]; }
  Index inv(Index g) const { return inverse_[g]; }
  Index power(Index g, long long e) const;
  Index conjugate(Index g, Index h) const { return mul(mul(g, h), inv(g)); }  // g h g^-1
  Index commutator(Index g, Index h) const { return mul(mul(g, h), mul(inv(g), inv(h))); }
  std::uint64_t element_order(Index g) const;
  bool is_abelian() const;
  const std::string& label(Index g) const { return labels_[g]; }
  const std::vector<std::string>& labels() const { return labels_; }

  // Exhaustive when n^3 <= exhaustive_limit, else `samples` seeded random triples.
  bool check_associativity(std::uint64_t samples, std::uint64_t seed,
                           std::uint64_t exhaustive_limit = std::uint64_t{1} << 21) const;

  // Text form: "order n", n label lines, n table rows.
  void dump(std::ostream& os) const;

 private:
  Index n_ = 0;
  Index identity_ = 0;
  std::vector<Index> table_;
  std::vector<Index> inverse_;
  std::vector<std::string> labels_;
};

struct SubgroupRef {
  const CayleyGroup* parent = nullptr;
  std::vector<Index> elements;  // sorted
  std::vector<Index> generators;

  std::size_t size() const { return elements.size(); }
  bool contains(Index g) const;
};

CayleyGroup build_nf_group(const GroupParams& p, std::uint64_t cap = kDefaultOrderCap);
Index nf_to_index(const GroupParams& p, const NfElement& g);

// Default 4-cycle (1 2 4 3) in one-line notation on points 1..4.
inline constexpr std::array<int, 4> kDefaultFourCycle = {2, 4, 1, 3};

struct SemidirectA4 {
  CayleyGroup group;
  Index xt = 0;  // (id, generator of the cyclic factor)
  Index yt = 0;  // ((12)(34), 0)
  int r = 0;
  // Index of the pair (sigma, h); sigma in one-line notation on 1..4.
  std::vector<std::array<int, 4>> perms;  // A4 in lexicographic order
  Index element(const std::array<int, 4>& sigma, std::uint32_t h) const;
};

// A4 x|_phi C_{2^r}, phi generated by conjugation with a 4-cycle of S4.
SemidirectA4 build_a4_semidirect(int r, std::uint64_t cap = kDefaultOrderCap,
                                 const std::array<int, 4>& four_cycle = kDefaultFourCycle);

SubgroupRef subgroup_closure(const CayleyGroup& g, const std::vector<Index>& gens);
SubgroupRef whole_group(const CayleyGroup& g);
bool presentation_match(const CayleyGroup& g, Index gx, Index gy, const GroupParams& p);

bool is_normal(const CayleyGroup& g, const SubgroupRef& n);
CayleyGroup quotient(const CayleyGroup& g, const SubgroupRef& n);
AbelianType abelian_invariants(const CayleyGroup& g);
AbelianType abelian_invariants(const CayleyGroup& g, const SubgroupRef& h);
CayleyGroup subgroup_as_group(const CayleyGroup& g, const SubgroupRef& h);

SubgroupRef center(const CayleyGroup& g);
SubgroupRef derived_subgroup(const CayleyGroup& g);
SubgroupRef centralizer(const CayleyGroup& g, const std::vector<Index>& set);
SubgroupRef normalizer(const CayleyGroup& g, const SubgroupRef& h);
std::vector<Index> conjugate_set(const CayleyGroup& g, const std::vector<Index>& set, Index by);
bool is_elementary_abelian(const CayleyGroup& g, const SubgroupRef& h);

inline constexpr std::uint64_t kLatticeCap = std::uint64_t{1} << 8;

// One representative per conjugacy class (lexicographically least element list),
// sorted by (order, elements). Groups above kLatticeCap require an order filter.
std::vector<SubgroupRef> subgroup_classes(const CayleyGroup& g, std::optional<std::uint64_t> order_filter = {},
                                          std::uint64_t cap = kLatticeCap);

// Every subgroup of `within`, sorted by (order, elements).
std::vector<SubgroupRef> all_subgroups(const CayleyGroup& g, const SubgroupRef& within);

// Canonical conjugacy-class key: least sorted element list over all conjugates.
std::vector<Index> class_key(const CayleyGroup& g, const std::vector<Index>& elements);

CayleyGroup build_cyclic(std::uint64_t n);
CayleyGroup build_abelian(const AbelianType& t);
CayleyGroup build_symmetric(int degree);
CayleyGroup build_alternating4();

}  // namespace mna
