// Command-line front end: individual checks, the full sweep, SNF, form
// reduction, group dumps and the exclusion search.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mna/checks.hpp"
#include "mna/generic_group.hpp"
#include "mna/intforms.hpp"
#include "mna/nf_group.hpp"
#include "mna/search.hpp"

namespace {

constexpr int kExitUsage = 2;

mna::SearchCaps caps_from_env() {
  mna::SearchCaps caps;
  if (const char* v = std::getenv("MNA_CAP_NODES")) caps.max_nodes = std::stoull(v);
  if (const char* v = std::getenv("MNA_CAP_SECONDS")) caps.max_seconds = std::stod(v);
  return caps;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw mna::UsageError("cannot write " + out);
  f << text;
}

std::string report_line(const mna::CheckReport& r) {
  std::ostringstream os;
  os << r.check_id;
  for (const auto& [k, v] : r.params) os << ' ' << k << '=' << v;
  os << "  " << mna::to_string(r.status) << "  " << r.details << '\n';
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal nonabelian 2-group block toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  bool json = false;
  std::string out;
  std::uint64_t cap_nodes = 0;
  double cap_seconds = 0;
  app.add_flag("--json", json, "JSON output");
  app.add_option("--out", out, "write output to a file");
  auto* nodes_opt = app.add_option("--cap-nodes", cap_nodes, "search node cap (env MNA_CAP_NODES)");
  auto* secs_opt = app.add_option("--cap-seconds", cap_seconds, "search time cap (env MNA_CAP_SECONDS)");

  auto* info = app.add_subcommand("info", "list the checks, or describe D(r,s) when --r and --s are given");
  int info_r = 0, info_s = 0;
  auto* info_r_opt = info->add_option("--r", info_r, "parameter r");
  auto* info_s_opt = info->add_option("--s", info_s, "parameter s");

  auto* check = app.add_subcommand("check", "run one check");
  std::string check_id;
  std::vector<std::string> kv;
  int opt_r = 0, opt_s = 0;
  check->add_option("id", check_id, "check id")->required();
  check->add_option("params", kv, "extra parameters as key=value");
  auto* r_opt = check->add_option("--r", opt_r, "parameter r");
  auto* s_opt = check->add_option("--s", opt_s, "parameter s");

  auto* all = app.add_subcommand("verify-all", "run every check over a parameter grid");
  int r_max = 4, s_max = 3;
  unsigned threads = 1;
  bool with_search = false;
  all->add_option("--r-max", r_max, "largest r")->check(CLI::Range(1, 12));
  all->add_option("--s-max", s_max, "largest s")->check(CLI::Range(0, 12));
  all->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 256u));
  all->add_flag("--search", with_search, "include the exclusion searches");

  auto* snf = app.add_subcommand("snf", "Smith normal form of a matrix file (rows cols entries...)");
  std::string matrix_file;
  snf->add_option("file", matrix_file, "matrix file, '-' for stdin")->required();

  auto* reduce = app.add_subcommand("reduce", "reduce a positive definite binary form a x^2 + b xy + c y^2");
  std::vector<long long> abc;
  reduce->add_option("abc", abc, "a b c")->required()->expected(3);

  auto* dump = app.add_subcommand("dump-group", "print the Cayley table of D(r,s)");
  int dump_r = 2, dump_s = 1;
  dump->add_option("--r", dump_r, "parameter r")->required();
  dump->add_option("--s", dump_s, "parameter s")->required();

  auto* search = app.add_subcommand("search", "run an exclusion search scenario");
  std::string scenario;
  search->add_option("scenario", scenario, "rs1_r2_consistency | req_s_r2_k14 | req_s_r2_k12")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    mna::RunOptions opts;
    opts.caps = caps_from_env();
    if (*nodes_opt) opts.caps.max_nodes = cap_nodes;
    if (*secs_opt) opts.caps.max_seconds = cap_seconds;

    if (*info && (*info_r_opt || *info_s_opt)) {
      if (!*info_r_opt || !*info_s_opt) throw mna::UsageError("info needs both --r and --s");
      const mna::GroupParams p{info_r, info_s};
      try {
        mna::validate(p);
      } catch (const std::invalid_argument& e) {
        throw mna::UsageError(e.what());
      }
      const auto cs = mna::characteristic_subgroups(p);
      mna::Json j = mna::Json::object();
      j["r"] = p.r;
      j["s"] = p.s;
      j["order"] = p.order();
      j["classes"] = mna::conjugacy_class_count(p);
      j["center"] = mna::format_type(cs.center);
      j["derived"] = mna::format_type(cs.derived);
      j["frattini_equals_center"] = cs.frattini_equals_center;
      if (p.r >= 2) {
        mna::Json m = mna::Json::array();
        for (const auto& ms : mna::maximal_subgroups(p)) m.push_back(mna::format_type(ms.type));
        j["maximal_subgroups"] = m;
      }
      if (json) {
        emit(j.dump(2) + "\n", out);
      } else {
        std::ostringstream os;
        for (const auto& [k, v] : j.items()) os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
        emit(os.str(), out);
      }
      return 0;
    }

    if (*info) {
      std::ostringstream os;
      if (json) {
        mna::Json a = mna::Json::array();
        for (const auto& c : mna::check_catalog()) a.push_back({{"check_id", c.id}, {"role", c.role}, {"params", c.param_names}});
        os << a.dump(2) << '\n';
      } else {
        for (const auto& c : mna::check_catalog()) os << c.id << "  " << c.role << '\n';
      }
      emit(os.str(), out);
      return 0;
    }

    if (*check) {
      mna::CheckParams params;
      if (*r_opt) params["r"] = opt_r;
      if (*s_opt) params["s"] = opt_s;
      for (const auto& item : kv) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw mna::UsageError("expected key=value, got " + item);
        try {
          params[item.substr(0, eq)] = std::stoll(item.substr(eq + 1));
        } catch (const std::logic_error&) {
          throw mna::UsageError("not an integer: " + item);
        }
      }
      const auto rep = mna::run_check(check_id, params, opts);
      emit(json ? mna::to_json(std::vector<mna::CheckReport>{rep}).dump(2) + "\n" : report_line(rep), out);
      if (rep.status == mna::CheckStatus::fail) return 1;
      if (rep.status == mna::CheckStatus::inconclusive) return kExitUsage;
      return 0;
    }

    if (*all) {
      const auto reps = mna::verify_all(r_max, s_max, with_search, threads, opts);
      std::ostringstream os;
      if (json) {
        os << mna::to_json(reps).dump(2) << '\n';
      } else {
        std::size_t pass = 0, fail = 0, skip = 0, inc = 0;
        for (const auto& r : reps) {
          os << report_line(r);
          pass += r.status == mna::CheckStatus::pass;
          fail += r.status == mna::CheckStatus::fail;
          skip += r.status == mna::CheckStatus::skip;
          inc += r.status == mna::CheckStatus::inconclusive;
        }
        os << "summary: " << pass << " pass, " << fail << " fail, " << skip << " skip, " << inc << " inconclusive\n";
      }
      emit(os.str(), out);
      return mna::aggregate_exit_code(reps);
    }

    if (*snf) {
      mna::IntMatrix m;
      if (matrix_file == "-") {
        m = mna::parse_matrix(std::cin);
      } else {
        std::ifstream f(matrix_file);
        if (!f) throw mna::UsageError("cannot read " + matrix_file);
        m = mna::parse_matrix(f);
      }
      const auto d = mna::smith_normal_form(m);
      if (json) {
        mna::Json a = mna::Json::array();
        for (const auto& v : d) a.push_back(v.get_str());
        emit(mna::Json{{"matrix", m.to_string()}, {"snf", a}}.dump(2) + "\n", out);
      } else {
        emit(mna::format_divisors(d) + "\n", out);
      }
      return 0;
    }

    if (*reduce) {
      const mna::QuadForm q{mpz_class(static_cast<long>(abc[0])), mpz_class(static_cast<long>(abc[1])),
                            mpz_class(static_cast<long>(abc[2]))};
      if (!q.positive_definite()) throw mna::UsageError("form must be positive definite");
      const auto red = mna::reduce_qf(q);
      if (json) {
        emit(mna::Json{{"form", q.to_string()},
                       {"disc", q.disc().get_str()},
                       {"reduced", red.reduced.to_string()},
                       {"transform", red.transform.to_string()}}
                     .dump(2) +
                 "\n",
             out);
      } else {
        emit(red.reduced.to_string() + "  via " + red.transform.to_string() + "\n", out);
      }
      return 0;
    }

    if (*dump) {
      const mna::GroupParams p{dump_r, dump_s};
      try {
        mna::validate(p);
      } catch (const std::invalid_argument& e) {
        throw mna::UsageError(e.what());
      }
      std::ostringstream os;
      mna::build_nf_group(p).dump(os);
      emit(os.str(), out);
      return 0;
    }

    if (*search) {
      const auto s = mna::parse_scenario(scenario);
      if (!s) throw mna::UsageError("unknown scenario: " + scenario);
      const auto res = mna::exclusion_search_r2(*s, opts.caps);
      std::ostringstream os;
      if (json) {
        os << mna::search_result_json(res).dump(2) << '\n';
      } else {
        os << res.scenario << ": " << res.status << ", explored " << res.explored << ", completions " << res.completions
           << ", consistent " << res.consistent_found << '\n';
        for (const auto& [k, v] : res.snf_histogram) os << "  " << k << ": " << v << '\n';
        for (const auto& w : res.witnesses) os << "  witness " << w << '\n';
      }
      emit(os.str(), out);
      if (res.status != "complete") return kExitUsage;
      const bool exclusion = *s == mna::SearchScenario::req_s_r2_k14;
      return (exclusion ? res.consistent_found == 0 : res.consistent_found > 0) ? 0 : 1;
    }
  } catch (const mna::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
