#pragma once

// Generalized decomposition columns for the r > s = 1 family as integer
// coordinates over 2-power cyclotomics: the canonical display shapes, the
// columns realized by the principal block of A4 x| C_{2^r}, and the
// orthogonality, divisibility and contribution checks applied to them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mna/cyclo.hpp"
#include "mna/generic_group.hpp"
#include "mna/intforms.hpp"
#include "mna/nf_group.hpp"
#include "mna/subsections.hpp"

namespace mna {

enum class CartanCase { first, second };
std::string to_string(CartanCase c);

struct CycloColumnFamily {
  std::string label;
  NfElement u;
  int k_level = 0;  // u has order 2^k_level
  int phi = 0;      // Brauer character of b_u (0 when l(b_u) = 1, else 1 or 2)
  bool central = false;
  std::vector<int> heights;                   // per character
  std::vector<std::vector<long long>> coeffs;  // [chi][i], i < width()

  std::size_t num_chars() const { return coeffs.size(); }
  std::size_t width() const { return k_level <= 1 ? 1 : std::size_t{1} << (k_level - 1); }
  // a_i(chi) for any integer i, using a_{i + 2^(k-1)} = -a_i.
  long long coeff(std::size_t chi, long long i) const;
  std::vector<long long> column(std::size_t i) const;
};

// Canonical shapes with all signs +: non-central orbit families, families for
// Z(D) outside <c>, and the two families at each <c>-orbit in the given case.
std::vector<CycloColumnFamily> build_columns_rs1(int r, CartanCase which);

std::vector<int> canonical_heights_rs1(int r);

long long inner_product(const CycloColumnFamily& fu, std::size_t i, const CycloColumnFamily& fv, std::size_t j);

CycloColumnFamily galois_twist(const CycloColumnFamily& f, long long gamma);

bool check_divisibility_heights(const CycloColumnFamily& f);
// Per character: whether the coefficient sum is odd (the predicted height-0 rows).
std::vector<bool> height_parity(const CycloColumnFamily& f);
bool height_parity_consistent(const CycloColumnFamily& f);

// Row permutation mapping f onto the shape of g up to row signs, if one exists.
std::optional<std::vector<std::size_t>> shape_match(const CycloColumnFamily& f, const CycloColumnFamily& g);

struct ContributionDiag {
  CartanCase which = CartanCase::second;
  std::vector<Cyclo> values;  // |D| m_{chi chi}^{(c)}
  std::vector<bool> integral;
  bool valuations_ok = false;  // height 0: odd; height 1: even
};

ContributionDiag contributions_at_c(int r, CartanCase which, const CycloColumnFamily& f1, const CycloColumnFamily& f2);

// (1 + 2^(r+1) + 2^(r-1) + 3 (2^(r-1) - 1)) mod 4; the control replaces the leading 1 by 3.
int contribution_sum_residue(int r, bool control = false);

struct OrdinaryCartanCheck {
  IntMatrix q;
  IntMatrix gram;
  bool congruent_to_target = false;
  std::vector<mpz_class> snf;
};
OrdinaryCartanCheck ordinary_cartan_check(int r);

struct SupportCount {
  std::uint64_t support_sum = 0;   // sum over columns of nonzero rows
  std::uint64_t height1_hits = 0;  // sum over columns of nonzero height-1 rows
  std::uint64_t bound = 0;         // |D| - 3 * height1_hits
  bool closes = false;             // support_sum == k == bound and height1_hits == k1
};
// Support counting for a central family with l(b_u) = 1.
SupportCount support_count(const CycloColumnFamily& f, int r);

// The principal 2-block of A4 x| C_{2^r} realizing the r > s = 1 family.
struct RealizedBlock {
  int r = 0;
  SemidirectA4 group;
  std::vector<Index> d_to_g;  // element_index in D(r,1) -> group element
  std::vector<std::string> char_labels;
  std::vector<int> heights;
  std::vector<std::vector<Cyclo>> char_values;  // [chi][g], level r
  IntMatrix decomposition;                      // ordinary, k x 2
  IntMatrix cartan;
  std::vector<CycloColumnFamily> families;      // one per (u in T minus 1, Brauer character)
  SubsectionSet ts;
  std::vector<int> class_of;                    // conjugacy class id per group element
};

RealizedBlock realize_block_rs1(int r);

struct OrthogonalityReport {
  std::uint64_t pairs_checked = 0;
  std::uint64_t mismatches = 0;
  std::string first_mismatch;
};
// Every pair of coefficient columns against the orthogonality table.
OrthogonalityReport check_orthogonality_table(const RealizedBlock& b);

struct RealizationReport {
  bool characters_orthonormal = false;
  bool degrees_match = false;        // k, k0, k1 and l
  bool subsections_match = false;    // T meets every 2-class of G exactly once
  bool galois_twist_matches = false;
  bool shapes_match = false;         // every family equals its canonical shape up to rows and signs
  bool divisibility_ok = false;
  bool parity_ok = false;
  bool support_ok = false;
  bool brauer_sum_ok = false;        // sum over T of |D| m_{chi chi}^{(u)} = |D|
  bool contributions_ok = false;
  OrthogonalityReport orthogonality;
  std::string detail;
};
RealizationReport verify_realized_block(const RealizedBlock& b);

}  // namespace mna
