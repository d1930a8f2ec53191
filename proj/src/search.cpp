#include "mna/search.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mna {

namespace {

constexpr std::size_t kMaxWitnesses = 3;

long long isqrt(long long v) {
  long long s = static_cast<long long>(std::sqrt(static_cast<double>(v)));
  while (s * s > v) --s;
  while ((s + 1) * (s + 1) <= v) ++s;
  return s;
}

long long pmod2(long long v) { return ((v % 2) + 2) % 2; }

// Rows: height-0 pair rows, free height-0 rows, height-1 pair rows, free height-1 rows.
SearchModel base_model(const std::string& name, std::size_t k0, std::size_t k1, std::size_t pairs_h0,
                       std::size_t pairs_h1) {
  SearchModel m;
  m.name = name;
  for (std::size_t i = 0; i < 2 * pairs_h0; i += 2) m.pairs.emplace_back(i, i + 1);
  m.heights.assign(k0, 0);
  for (std::size_t i = 0; i < 2 * pairs_h1; i += 2) m.pairs.emplace_back(k0 + i, k0 + i + 1);
  m.heights.resize(k0 + k1, 1);
  return m;
}

ColumnRule column(const std::string& name, long long norm, std::vector<long long> inner) {
  ColumnRule c;
  c.name = name;
  c.norm = norm;
  c.inner = std::move(inner);
  return c;
}

std::vector<long long> zeros(std::size_t n) { return std::vector<long long>(n, 0); }

// Shared layout for D(2,s): two a_1 columns, two central l = 1 columns, two a_0 columns.
void add_common_columns(SearchModel& m, long long noncentral_norm, long long order) {
  auto a1y = column("a1[u1]", noncentral_norm, {});
  a1y.pair_antisymmetric = true;
  auto a1w = column("a1[u2]", noncentral_norm, zeros(1));
  a1w.pair_antisymmetric = true;
  auto central = [&](const std::string& name, std::size_t before) {
    auto c = column(name, order, zeros(before));
    c.h0_parity = 1;
    c.h1_two_mod_four = true;
    return c;
  };
  auto a0 = [&](const std::string& name, std::size_t before, std::size_t partner) {
    auto c = column(name, noncentral_norm, zeros(before));
    c.h0_parity = 1;
    c.h1_parity = 0;
    c.parity_with = {{partner, 1}};
    return c;
  };
  m.columns = {a1y, a1w, central("central[1]", 2), central("central[2]", 3), a0("a0[u1]", 4, 0), a0("a0[u2]", 5, 1)};
}

std::vector<SearchModel> req_s_models(std::size_t k) {
  const std::size_t k0 = 8, k1 = k - k0;
  std::vector<SearchModel> out;
  for (std::size_t ph1 = 0; ph1 <= 2 && 2 * ph1 <= k1; ++ph1) {
    const std::size_t ph0 = 2 - ph1;
    SearchModel m = base_model("pairs h0=" + std::to_string(ph0) + " h1=" + std::to_string(ph1), k0, k1, ph0, ph1);
    add_common_columns(m, 8, 32);
    // z block in the basis Z1, E = Z2 - Z1, F = Z3 - Z1 of Gram 2 Cbar = [[12,10,10],[10,12,10],[10,10,12]].
    m.columns.push_back(column("z:E", 4, zeros(6)));
    auto f = column("z:F", 4, zeros(6));
    f.inner.push_back(2);
    m.columns.push_back(f);
    auto z1 = column("z:Z1", 12, zeros(6));
    z1.inner.push_back(-2);
    z1.inner.push_back(-2);
    // |D| m_{chi chi}^{(z)} = 3 Z1 + E + F (mod 2): odd exactly at height 0.
    z1.h0_parity = 1;
    z1.h1_parity = 0;
    z1.parity_with = {{6, 1}, {7, 1}};
    m.columns.push_back(z1);
    m.l = k - m.columns.size();
    m.target_snf = k == 14 ? std::vector<long long>{1, 1, 2, 2, 32} : std::vector<long long>{2, 2, 32};
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<SearchModel> rs1_models() {
  const std::size_t k0 = 8, k1 = 2;
  std::vector<SearchModel> out;
  for (std::size_t ph1 = 0; ph1 <= 1; ++ph1) {
    const std::size_t ph0 = 2 - ph1;
    SearchModel m = base_model("pairs h0=" + std::to_string(ph0) + " h1=" + std::to_string(ph1), k0, k1, ph0, ph1);
    add_common_columns(m, 4, 16);
    // <c> columns with Gram [[8,4],[4,6]]; |D| m^{(c)} = 3 d1^2 - 4 d1 d2 + 4 d2^2.
    auto c1 = column("c:phi1", 8, zeros(6));
    c1.h0_parity = 1;
    c1.h1_parity = 0;
    auto c2 = column("c:phi2", 6, zeros(6));
    c2.inner.push_back(4);
    m.columns.push_back(c1);
    m.columns.push_back(c2);
    m.l = 2;
    m.target_snf = {2, 16};
    out.push_back(std::move(m));
  }
  return out;
}

class Searcher {
 public:
  Searcher(const SearchModel& model, const SearchCaps& caps, SearchResult& result,
           std::chrono::steady_clock::time_point start, std::set<std::string>& witnesses)
      : m_(model), caps_(caps), res_(result), start_(start), witnesses_(witnesses) {
    const std::size_t k = m_.heights.size();
    partner_.assign(k, -1);
    second_.assign(k, false);
    for (const auto& [a, b] : m_.pairs) {
      partner_[a] = static_cast<long long>(b);
      partner_[b] = static_cast<long long>(a);
      second_[b] = true;
    }
    group_prev_.assign(k, -1);
    for (std::size_t i = 1; i < k; ++i)
      if (partner_[i] < 0 && partner_[i - 1] < 0 && m_.heights[i] == m_.heights[i - 1])
        group_prev_[i] = static_cast<long long>(i - 1);
    mat_.assign(k, std::vector<long long>(m_.columns.size(), 0));
    suffix_.assign(m_.columns.size(), std::vector<long long>(k + 1, 0));
    for (std::size_t c = 0; c < m_.columns.size(); ++c)
      if (m_.columns[c].inner.size() != c) throw std::logic_error("search model: inner targets per column");
  }

  // False once a cap is hit.
  bool run() { return start_column(0); }

 private:
  bool start_column(std::size_t c) {
    if (c == m_.columns.size()) {
      evaluate();
      return true;
    }
    const std::size_t k = m_.heights.size();
    minreq_.assign(k + 1, 0);
    for (std::size_t i = k; i-- > 0;) minreq_[i] = minreq_[i + 1] + min_square(c, i);
    partial_.assign(c, 0);
    return place(c, 0, m_.columns[c].norm);
  }

  int required_parity(std::size_t c, std::size_t i) const {
    const ColumnRule& col = m_.columns[c];
    const int want = m_.heights[i] == 0 ? col.h0_parity : col.h1_parity;
    if (want < 0) return -1;
    long long s = 0;
    for (const auto& [j, coeff] : col.parity_with) s += coeff * mat_[i][j];
    return static_cast<int>(pmod2(want - s));
  }

  long long min_square(std::size_t c, std::size_t i) const {
    const ColumnRule& col = m_.columns[c];
    if (col.pair_antisymmetric && partner_[i] < 0) return 0;
    if (m_.heights[i] == 1 && col.h1_two_mod_four) return 4;
    return required_parity(c, i) == 1 ? 1 : 0;
  }

  bool admissible(std::size_t c, std::size_t i, long long v) const {
    const ColumnRule& col = m_.columns[c];
    const int par = required_parity(c, i);
    if (par >= 0 && pmod2(v) != par) return false;
    if (m_.heights[i] == 1 && col.h1_two_mod_four && ((v % 4) + 4) % 4 != 2) return false;
    return true;
  }

  bool row_zero_before(std::size_t i, std::size_t c) const {
    for (std::size_t j = 0; j < c; ++j)
      if (mat_[i][j] != 0) return false;
    return true;
  }

  bool rows_equal_before(std::size_t a, std::size_t b, std::size_t c) const {
    for (std::size_t j = 0; j < c; ++j)
      if (mat_[a][j] != mat_[b][j]) return false;
    return true;
  }

  bool tick() {
    ++res_.explored;
    if (res_.explored >= caps_.max_nodes) return false;
    if ((res_.explored & 0x3fff) == 0) {
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
      if (secs >= caps_.max_seconds) return false;
    }
    return true;
  }

  bool place(std::size_t c, std::size_t i, long long rem) {
    const std::size_t k = m_.heights.size();
    if (i == k) {
      if (rem != 0) return true;
      for (std::size_t j = 0; j < c; ++j)
        if (partial_[j] != m_.columns[c].inner[j]) return true;
      for (std::size_t j = 0; j <= c; ++j) {
        suffix_[j][k] = 0;
        for (std::size_t r = k; r-- > 0;) suffix_[j][r] = suffix_[j][r + 1] + mat_[r][j] * mat_[r][j];
      }
      const auto saved_min = minreq_;
      const auto saved_partial = partial_;
      const bool ok = start_column(c + 1);
      minreq_ = saved_min;
      partial_ = saved_partial;
      return ok;
    }
    const ColumnRule& col = m_.columns[c];
    std::vector<long long> candidates;
    if (col.pair_antisymmetric && partner_[i] < 0) {
      candidates.push_back(0);
    } else if (second_[i]) {
      const long long first = mat_[static_cast<std::size_t>(partner_[i])][c];
      candidates.push_back(col.pair_antisymmetric ? -first : first);
    } else {
      if (rem < minreq_[i + 1]) return true;
      const long long bound = isqrt(rem - minreq_[i + 1]);
      long long hi = bound;
      if (group_prev_[i] >= 0 && rows_equal_before(static_cast<std::size_t>(group_prev_[i]), i, c))
        hi = std::min(hi, mat_[static_cast<std::size_t>(group_prev_[i])][c]);
      const long long lo = row_zero_before(i, c) ? 0 : -bound;
      for (long long v = hi; v >= lo; --v) candidates.push_back(v);
    }
    for (long long v : candidates) {
      if (!admissible(c, i, v)) continue;
      const long long left = rem - v * v;
      if (left < minreq_[i + 1]) continue;
      if (!tick()) return false;
      bool feasible = true;
      for (std::size_t j = 0; j < c && feasible; ++j) {
        const long long d = col.inner[j] - (partial_[j] + v * mat_[i][j]);
        if (d * d > left * suffix_[j][i + 1]) feasible = false;
      }
      if (!feasible) continue;
      mat_[i][c] = v;
      for (std::size_t j = 0; j < c; ++j) partial_[j] += v * mat_[i][j];
      const bool ok = place(c, i + 1, left);
      for (std::size_t j = 0; j < c; ++j) partial_[j] -= v * mat_[i][j];
      mat_[i][c] = 0;
      if (!ok) return false;
    }
    return true;
  }

  void evaluate() {
    ++res_.completions;
    const std::size_t k = m_.heights.size(), n = m_.columns.size();
    IntMatrix mt(n, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < n; ++j) mt.at(j, i) = static_cast<long>(mat_[i][j]);
    const IntMatrix q = integer_kernel(mt);
    if (q.cols() != m_.l) {
      ++res_.rank_deficient;
      return;
    }
    const IntMatrix cartan = q.transpose() * q;
    const auto snf = smith_normal_form(cartan);
    const std::string key = format_divisors(snf);
    ++res_.snf_histogram[key];
    bool match = snf.size() == m_.target_snf.size();
    for (std::size_t i = 0; match && i < snf.size(); ++i) match = snf[i] == static_cast<long>(m_.target_snf[i]);
    if (!match) return;
    ++res_.consistent_found;
    std::ostringstream os;
    os << m_.name << " columns=[";
    for (std::size_t i = 0; i < k; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < n; ++j) os << (j ? "," : "") << mat_[i][j];
      os << "]";
    }
    os << "] cartan=" << cartan.to_string();
    witnesses_.insert(os.str());
    if (witnesses_.size() > kMaxWitnesses) witnesses_.erase(std::prev(witnesses_.end()));
  }

  const SearchModel& m_;
  const SearchCaps& caps_;
  SearchResult& res_;
  std::chrono::steady_clock::time_point start_;
  std::set<std::string>& witnesses_;
  std::vector<long long> partner_;
  std::vector<bool> second_;
  std::vector<long long> group_prev_;
  std::vector<std::vector<long long>> mat_;     // [row][column]
  std::vector<std::vector<long long>> suffix_;  // [column][row]: squared norm of rows >= row
  std::vector<long long> minreq_;
  std::vector<long long> partial_;
};

}  // namespace

std::string to_string(SearchScenario s) {
  switch (s) {
    case SearchScenario::rs1_r2_consistency: return "rs1_r2_consistency";
    case SearchScenario::req_s_r2_k14: return "req_s_r2_k14";
    case SearchScenario::req_s_r2_k12: return "req_s_r2_k12";
  }
  return "?";
}

std::optional<SearchScenario> parse_scenario(const std::string& name) {
  for (auto s : {SearchScenario::rs1_r2_consistency, SearchScenario::req_s_r2_k14, SearchScenario::req_s_r2_k12})
    if (to_string(s) == name) return s;
  return std::nullopt;
}

std::vector<SearchModel> scenario_models(SearchScenario s) {
  switch (s) {
    case SearchScenario::rs1_r2_consistency: return rs1_models();
    case SearchScenario::req_s_r2_k14: return req_s_models(14);
    case SearchScenario::req_s_r2_k12: return req_s_models(12);
  }
  throw std::invalid_argument("unknown scenario");
}

SearchResult run_models(const std::string& scenario, const std::vector<SearchModel>& models, const SearchCaps& caps) {
  SearchResult res;
  res.scenario = scenario;
  res.status = "complete";
  const auto start = std::chrono::steady_clock::now();
  std::set<std::string> witnesses;
  if (caps.max_nodes == 0 || caps.max_seconds <= 0) {
    res.status = "inconclusive";
    return res;
  }
  for (const auto& m : models) {
    Searcher s(m, caps, res, start, witnesses);
    if (!s.run()) {
      res.status = "inconclusive";
      break;
    }
  }
  res.witnesses.assign(witnesses.begin(), witnesses.end());
  return res;
}

SearchResult exclusion_search_r2(SearchScenario s, const SearchCaps& caps) {
  return run_models(to_string(s), scenario_models(s), caps);
}

}  // namespace mna
