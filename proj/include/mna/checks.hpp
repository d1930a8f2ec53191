#pragma once

// Named, parameterized checks over every module, with JSON reports.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mna/decomp.hpp"
#include "mna/invariants.hpp"
#include "mna/search.hpp"
#include "mna/subsections.hpp"

namespace mna {

using Json = nlohmann::ordered_json;
using CheckParams = std::map<std::string, long long>;

// Unknown check ids and invalid parameters (exit code 2 at the command line).
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class CheckStatus { pass, fail, skip, inconclusive };
std::string to_string(CheckStatus s);

struct CheckReport {
  std::string check_id;
  CheckParams params;
  CheckStatus status = CheckStatus::skip;
  std::string details;
  Json data = Json::object();
};

Json to_json(const CheckReport& r);
Json to_json(const std::vector<CheckReport>& reports);  // top-level array

// Which parameter grid verify_all runs a check over.
enum class ParamGrid { none, r, rs, s, search };

struct CheckInfo {
  std::string id;
  std::string role;  // one-line description for listings and docs
  ParamGrid grid = ParamGrid::none;
  std::vector<std::string> param_names;
};

const std::vector<CheckInfo>& check_catalog();

// Search checks read their caps from here; a zero cap yields inconclusive.
struct RunOptions {
  SearchCaps caps;
};

CheckReport run_check(const std::string& check_id, const CheckParams& params, const RunOptions& opts = {});

// Catalog order, then parameter order; independent of thread count.
std::vector<CheckReport> verify_all(int r_max, int s_max, bool include_search, unsigned threads = 1,
                                    const RunOptions& opts = {});

// 0 if no report failed, else 1.
int aggregate_exit_code(const std::vector<CheckReport>& reports);

Json subsection_set_json(const SubsectionSet& ts);
Json invariants_table_json(int r_max);  // one row per r: |D|, k, k0, k1, l
Json family_json(const CycloColumnFamily& f);
Json search_result_json(const SearchResult& r);

}  // namespace mna
