#pragma once

// Representative sets for the conjugacy classes of subsections in the two
// families (r > s = 1 and r = s), with their l-values and Galois orbits.

#include <cstdint>
#include <optional>
#include <vector>

#include "mna/generic_group.hpp"
#include "mna/morphisms.hpp"
#include "mna/nf_group.hpp"

namespace mna {

enum class SubsectionCase { rs1, req_s };

struct SubsectionEntry {
  NfElement element;
  int l_value = 1;  // for the identity: the block's own l, excluded from sums
  int orbit_id = 0;
};

struct SubsectionSet {
  GroupParams params;
  SubsectionCase kind = SubsectionCase::rs1;
  std::vector<SubsectionEntry> entries;  // sorted by element_index
  std::optional<NfElement> canonical_c;  // rs1 only
  // req_s only: shape of the alpha-orbit partition of the center
  std::uint64_t central_fixed_points = 0;
  std::uint64_t central_three_orbits = 0;
};

std::uint64_t t_set_size_rs1(int r);
std::uint64_t t_set_size_req_s(int r);

SubsectionSet t_set_rs1(int r);

// alpha must be an order-3 automorphism of build_nf_group((r,r)).
SubsectionSet t_set_req_s(int r, const Automorphism& alpha);

// x -> y, y -> x^-1 y^-1 on build_nf_group((r,r)).
Automorphism standard_order3_automorphism(const CayleyGroup& d, int r);

struct KMinusL {
  std::uint64_t sum = 0;
  std::uint64_t closed_form = 0;
  bool match = false;
};

KMinusL k_minus_l_check(const SubsectionSet& ts);

// Two censuses of the Galois action on the rs1 set: orbits on the set itself,
// and orbits weighted by the number of Brauer characters they carry.
struct GaloisOrbitStructure {
  std::uint64_t set_orbit_count = 0;
  std::vector<std::uint64_t> set_lengths;  // ascending
  std::uint64_t column_orbit_count = 0;    // 3r+2
  std::vector<std::uint64_t> column_lengths;
  std::vector<std::uint64_t> height0_family_sizes;
};

GaloisOrbitStructure galois_orbit_structure(const SubsectionSet& ts);

// Two-element Galois orbits in the r = s set (pairs of 2-conjugate subsections).
std::uint64_t galois_pair_count(const SubsectionSet& ts);

struct ChainCensus {
  std::uint64_t max_length = 0;
  std::uint64_t e8_class_count = 0;
  std::vector<std::uint64_t> chain_counts_by_length;  // index 0 = length 1
  bool e8_is_standard = false;                       // the unique one is <x^(2^(r-1)), y, z>
  bool long_chains_end_at_e8 = false;
};

// Chains of nontrivial elementary abelian subgroups of D(r,1) up to D-conjugacy.
ChainCensus elem_abelian_chains(const GroupParams& p);

}  // namespace mna
