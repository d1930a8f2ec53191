#pragma once

// Normal-form arithmetic for the minimal nonabelian 2-groups
//   D(r,s) = <x,y | x^(2^r) = y^(2^s) = [x,y]^2 = [x,x,y] = [y,x,y] = 1>,
// with every element written uniquely as x^a y^b z^c where z = [x,y].

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace mna {

inline constexpr std::uint64_t kDefaultOrderCap = std::uint64_t{1} << 12;

struct GroupParams {
  int r = 1;
  int s = 1;

  std::uint32_t x_mod() const { return std::uint32_t{1} << r; }
  std::uint32_t y_mod() const { return std::uint32_t{1} << s; }
  std::uint64_t order() const { return std::uint64_t{1} << (r + s + 1); }
  bool operator==(const GroupParams&) const = default;
};

// Throws std::invalid_argument unless r >= s >= 1 and |D| <= cap.
void validate(const GroupParams& p, std::uint64_t cap = kDefaultOrderCap);

struct NfElement {
  std::uint32_t a = 0;  // exponent of x, in [0, 2^r)
  std::uint32_t b = 0;  // exponent of y, in [0, 2^s)
  std::uint32_t c = 0;  // exponent of z, in {0, 1}

  auto operator<=>(const NfElement&) const = default;
};

// Invariant factors in descending order, each dividing its predecessor;
// trivial factors are never listed.
using AbelianType = std::vector<std::uint64_t>;

std::string format_type(const AbelianType& t);
std::string format_element(const NfElement& g);

NfElement nf_identity();
NfElement nf_x();
NfElement nf_y();
NfElement nf_z();
NfElement make_element(const GroupParams& p, long long a, long long b, long long c);

NfElement multiply(const GroupParams& p, const NfElement& g, const NfElement& h);
NfElement inverse(const GroupParams& p, const NfElement& g);
NfElement power(const GroupParams& p, const NfElement& g, long long n);
std::uint64_t element_order(const GroupParams& p, const NfElement& g);
NfElement commutator(const GroupParams& p, const NfElement& g, const NfElement& h);
bool is_central(const GroupParams& p, const NfElement& g);

// Dense indexing: index = (a * 2^s + b) * 2 + c.
std::uint32_t element_index(const GroupParams& p, const NfElement& g);
NfElement element_at(const GroupParams& p, std::uint32_t index);
std::vector<NfElement> all_elements(const GroupParams& p);

// Subgroup generated by gens, sorted by element_index.
std::vector<NfElement> generated_subgroup(const GroupParams& p, const std::vector<NfElement>& gens);

// Isomorphism type of an abelian group given the multiset of its element orders.
AbelianType abelian_type_from_orders(const std::vector<std::uint64_t>& orders);
AbelianType abelian_type_of(const GroupParams& p, const std::vector<NfElement>& subgroup);

struct CharacteristicSubgroups {
  AbelianType center;
  AbelianType derived;
  AbelianType frattini;
  AbelianType omega_of_center;
  std::uint64_t center_order = 0;
  std::uint64_t frattini_order = 0;
  bool frattini_equals_center = false;
  bool derived_is_z = false;
};

CharacteristicSubgroups characteristic_subgroups(const GroupParams& p);

struct MaximalSubgroup {
  std::vector<NfElement> generators;
  std::vector<NfElement> elements;
  AbelianType type;
  bool abelian = false;
};

// The three index-2 subgroups <x^2,y,z>, <x,y^2,z>, <xy,x^2,z>. Requires r >= 2.
std::vector<MaximalSubgroup> maximal_subgroups(const GroupParams& p);

std::uint64_t conjugacy_class_count(const GroupParams& p);
std::uint64_t class_count_formula(const GroupParams& p);

}  // namespace mna
