#include "mna/invariants.hpp"

#include <numeric>
#include <stdexcept>

namespace mna {

namespace {

std::uint64_t pow2(int e) { return std::uint64_t{1} << e; }

std::uint64_t exact_third(std::uint64_t v) {
  if (v % 3 != 0) throw std::logic_error("expected a multiple of 3");
  return v / 3;
}

}  // namespace

std::string to_string(InvariantSource s) {
  switch (s) {
    case InvariantSource::theorem: return "theorem";
    case InvariantSource::special_case: return "special-case";
    case InvariantSource::bound_only: return "bound-only";
  }
  return "?";
}

bool is_consistent(const BlockInvariants& inv) {
  const std::uint64_t sum = std::accumulate(inv.k_by_height.begin(), inv.k_by_height.end(), std::uint64_t{0});
  if (sum != inv.k) return false;
  if (!inv.k_by_height.empty() && inv.k_by_height[0] >= 4 && inv.k_by_height[0] % 4 != 0) return false;
  return inv.l >= 1 && inv.k >= inv.l;
}

BlockInvariants invariants_rs1(int r) {
  if (r < 2) throw std::invalid_argument("invariants_rs1: r must be at least 2");
  BlockInvariants inv;
  inv.d = r + 2;
  inv.k = 5 * pow2(r - 1);
  inv.k_by_height = {pow2(r + 1), pow2(r - 1)};
  inv.l = 2;
  inv.source = InvariantSource::theorem;
  inv.family = BlockFamily::rs1;
  return inv;
}

BlockInvariants invariants_req_s_special(int r) {
  if (r < 2) throw std::invalid_argument("invariants_req_s_special: r must be at least 2");
  BlockInvariants inv;
  inv.d = 2 * r + 1;
  inv.k = exact_third(5 * pow2(2 * (r - 1)) + 16);
  inv.k_by_height = {exact_third(pow2(2 * r) + 8), exact_third(pow2(2 * (r - 1)) + 8)};
  inv.l = 3;
  inv.source = InvariantSource::special_case;
  inv.family = BlockFamily::req_s;
  return inv;
}

BlockInvariants invariants_eB3(int s) {
  if (s < 0) throw std::invalid_argument("invariants_eB3: s must be non-negative");
  BlockInvariants inv;
  inv.d = s + 2;
  inv.k = pow2(s + 2);
  inv.k_by_height = {inv.k};
  inv.l = 3;
  inv.source = InvariantSource::theorem;
  inv.family = BlockFamily::eB3;
  return inv;
}

InvariantBounds invariants_req_s_general(int r) {
  if (r < 2) throw std::invalid_argument("invariants_req_s_general: r must be at least 2");
  InvariantBounds b;
  b.d = 2 * r + 1;
  b.k_upper = exact_third(pow2(b.d) + 16);
  return b;
}

InequalityReport check_inequalities(const BlockInvariants& inv, std::uint64_t dd_prime_index) {
  InequalityReport out;
  std::uint64_t weighted = 0;
  for (std::size_t i = 0; i < inv.k_by_height.size(); ++i) {
    const std::uint64_t w = std::uint64_t{1} << (2 * i);
    weighted += w * inv.k_by_height[i];
  }
  out.robinson = inv.k <= weighted && weighted <= pow2(inv.d);
  out.robinson_equality = weighted == pow2(inv.d);
  out.olsson = !inv.k_by_height.empty() && inv.k_by_height[0] <= dd_prime_index;
  if (inv.family == BlockFamily::req_s) out.kw_bound = 3 * inv.k <= pow2(inv.d) + 16;
  out.high_heights_vanish = true;
  for (std::size_t i = 4; i < inv.k_by_height.size(); ++i)
    if (inv.k_by_height[i] != 0) out.high_heights_vanish = false;
  return out;
}

}  // namespace mna
