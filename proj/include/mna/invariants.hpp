#pragma once

// Closed-form block invariants for the two families and the inequality gates
// they must satisfy.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mna {

enum class InvariantSource { theorem, special_case, bound_only };
enum class BlockFamily { rs1, req_s, eB3 };

std::string to_string(InvariantSource s);

struct BlockInvariants {
  int d = 0;  // |D| = 2^d
  std::uint64_t k = 0;
  std::vector<std::uint64_t> k_by_height;  // dense from height 0
  std::uint64_t l = 0;
  InvariantSource source = InvariantSource::theorem;
  BlockFamily family = BlockFamily::rs1;
};

// Sum of heights equals k, k0 divisible by 4 once k0 >= 4, and k >= l >= 1.
bool is_consistent(const BlockInvariants& inv);

BlockInvariants invariants_rs1(int r);
BlockInvariants invariants_req_s_special(int r);
BlockInvariants invariants_eB3(int s);

// General r = s blocks: only bounds are available.
struct InvariantBounds {
  int d = 0;
  std::uint64_t k_upper = 0;  // (|D| + 16) / 3
  std::uint64_t l_lower = 3;
  InvariantSource source = InvariantSource::bound_only;
};
InvariantBounds invariants_req_s_general(int r);

struct InequalityReport {
  bool robinson = false;
  bool robinson_equality = false;  // sum of 4^i k_i equals |D|
  bool olsson = false;
  std::optional<bool> kw_bound;    // r = s family only
  bool high_heights_vanish = false;  // k_i = 0 for i >= 4
};

InequalityReport check_inequalities(const BlockInvariants& inv, std::uint64_t dd_prime_index);

}  // namespace mna
