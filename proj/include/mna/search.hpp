#pragma once

// Exhaustive search for integral generalized decomposition columns of a block
// with defect group D(2,2) (or D(2,1) as a control), followed by the Cartan
// test on the orthogonal complement.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mna/intforms.hpp"

namespace mna {

enum class SearchScenario { rs1_r2_consistency, req_s_r2_k14, req_s_r2_k12 };

std::string to_string(SearchScenario s);
std::optional<SearchScenario> parse_scenario(const std::string& name);

struct SearchCaps {
  std::uint64_t max_nodes = 100000000;
  double max_seconds = 600.0;
};

// One column of the unknown matrix, filled row by row.
struct ColumnRule {
  std::string name;
  long long norm = 0;
  std::vector<long long> inner;  // targets against every earlier column
  bool pair_antisymmetric = false;  // else equal on both rows of a pair
  // Parity of v + sum(coeff * earlier column) on height-0 / height-1 rows (-1: unconstrained).
  int h0_parity = -1;
  int h1_parity = -1;
  std::vector<std::pair<std::size_t, long long>> parity_with;
  bool h1_two_mod_four = false;  // height-1 entries congruent to 2 mod 4
};

struct SearchModel {
  std::string name;
  std::vector<int> heights;                              // per row
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // 2-conjugate rows
  std::vector<ColumnRule> columns;
  std::size_t l = 0;
  std::vector<long long> target_snf;
};

// Models for a scenario: one per placement of the conjugate pairs among the heights.
std::vector<SearchModel> scenario_models(SearchScenario s);

struct SearchResult {
  std::string scenario;
  std::string status;  // complete | inconclusive
  std::uint64_t explored = 0;
  std::uint64_t completions = 0;     // full column assignments
  std::uint64_t rank_deficient = 0;  // complement of the wrong rank
  std::uint64_t consistent_found = 0;
  std::map<std::string, std::uint64_t> snf_histogram;
  std::vector<std::string> witnesses;  // sorted, at most a few
};

SearchResult exclusion_search_r2(SearchScenario s, const SearchCaps& caps = {});
SearchResult run_models(const std::string& scenario, const std::vector<SearchModel>& models, const SearchCaps& caps);

}  // namespace mna
