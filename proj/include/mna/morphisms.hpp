#pragma once

// Automorphisms, fixed points, automizers, 2-nilpotency of fusion and the
// small cohomology counts that appear in the gluing arguments.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mna/generic_group.hpp"

namespace mna {

struct Automorphism {
  const CayleyGroup* parent = nullptr;
  std::vector<Index> image;  // image[g] = alpha(g)

  Index operator()(Index g) const { return image[g]; }
  std::uint64_t order() const;
  Automorphism compose(const Automorphism& other) const;  // this after other
  Automorphism power(std::uint64_t e) const;
  bool is_identity() const;
};

inline constexpr std::uint64_t kAutCap = std::uint64_t{1} << 9;

struct AutGroupInfo {
  std::uint64_t order = 0;
  bool is_two_group = false;
  std::optional<Automorphism> sample_order3;
  std::vector<Index> generators;
};

// Extends generators -> images to an endomorphism; nullopt unless it is a bijective homomorphism.
std::optional<Automorphism> automorphism_from_images(const CayleyGroup& g, const std::vector<Index>& gens,
                                                     const std::vector<Index>& images);

// Calls fn for every automorphism (generator images enumerated lexicographically
// among elements of matching order) until fn returns false.
void for_each_automorphism(const CayleyGroup& g, const std::vector<Index>& gens,
                           const std::function<bool(const Automorphism&)>& fn);

AutGroupInfo automorphism_group(const CayleyGroup& g, const std::vector<Index>& gens, std::uint64_t cap = kAutCap);
AutGroupInfo automorphism_group(const CayleyGroup& g, std::uint64_t cap = kAutCap);

// A generating set: one element if cyclic, else the least generating pair, else greedy.
std::vector<Index> small_generating_set(const CayleyGroup& g);
// Images of the standard basis vectors in build_abelian(t).
std::vector<Index> abelian_basis(const AbelianType& t);

// Aut of an abelian 2-group is a 2-group iff the cyclic exponents are pairwise distinct.
bool abelian_aut_is_two_group(const AbelianType& t);

SubgroupRef fixed_points(const CayleyGroup& g, const Automorphism& alpha);

struct AutomizerInfo {
  std::uint64_t order = 0;
  bool is_two_group = false;
  std::uint64_t normalizer_order = 0;
  std::uint64_t centralizer_order = 0;
};

AutomizerInfo automizer(const CayleyGroup& g, const SubgroupRef& q);

// N_G(Q)/C_G(Q) as a permutation group on Q, with its largest normal 2-subgroup.
struct AutomizerStructure {
  std::uint64_t order = 0;
  std::uint64_t o2_order = 0;
  std::uint64_t quotient_order = 0;
  bool quotient_nonabelian = false;
};
AutomizerStructure automizer_structure(const CayleyGroup& g, const SubgroupRef& q);

SubgroupRef sylow_two_subgroup(const CayleyGroup& g);

struct FusionReport {
  bool two_nilpotent = true;
  std::optional<SubgroupRef> witness;
  std::vector<std::pair<SubgroupRef, std::uint64_t>> automizer_orders;  // one per class of nontrivial 2-subgroups
};

FusionReport frobenius_two_nilpotent(const CayleyGroup& g, std::uint64_t cap = kDefaultOrderCap);

// Classes of subgroups Q <= S (S Sylow) with C_S(R) = Z(R) for every G-conjugate R <= S.
std::vector<SubgroupRef> fcentric_classes(const CayleyGroup& g, const SubgroupRef& s);

// |Hom(G, F^x)| for F algebraically closed of characteristic 2.
std::uint64_t h1_units_char2(const CayleyGroup& g, std::uint64_t cap = kDefaultOrderCap);

struct GluingH1 {
  std::uint64_t solutions = 0;  // number of derivations
  bool trivial = false;
};

// Derivations on the incidence category with one non-identity endomorphism:
// d = multiplier * d in Z/modulus.
GluingH1 gluing_h1_incidence(std::uint64_t modulus = 3, std::uint64_t multiplier = 2);

}  // namespace mna
