// dmot: preprocess a metric once, then answer network-design queries from the
// saved structure alone.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dmot/applications.hpp"
#include "dmot/bench.hpp"
#include "dmot/dynamic_mst.hpp"
#include "dmot/extraction.hpp"
#include "dmot/oracles.hpp"
#include "dmot/persistence.hpp"
#include "dmot/preprocess.hpp"
#include "dmot/spanner.hpp"
#include "dmot/verify.hpp"

using json = nlohmann::ordered_json;
using namespace dmot;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct ConfigFlags {
  double tau = 2.0;
  int eta = 2;
  double epsilon = 0.0;  // > 0 selects epsilon mode
  double eps0 = 0.5;
  uint64_t seed = 1;
  uint64_t hash_seed = 0x9e3779b97f4a7c15ULL;
  std::string costs;  // opening costs, one per point
};

void add_config(CLI::App* app, ConfigFlags& f) {
  app->add_option("--tau", f.tau, "level ratio")->capture_default_str();
  app->add_option("--eta", f.eta, "carving exponent")->capture_default_str();
  app->add_option("--epsilon", f.epsilon, "derive (tau, eta) for a 1+epsilon sandwich");
  app->add_option("--eps0", f.eps0, "facility index accuracy")->capture_default_str();
  app->add_option("--seed", f.seed, "random seed")->capture_default_str();
  app->add_option("--hash-seed", f.hash_seed, "dictionary hash seed");
  app->add_option("--costs", f.costs, "opening costs file (one per point; inf allowed)");
}

std::vector<double> read_costs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    if (tok == "inf" || tok == "+inf") out.push_back(std::numeric_limits<double>::infinity());
    else out.push_back(std::stod(tok));
  }
  return out;
}

PreprocessOptions options_of(const ConfigFlags& f, int n) {
  PreprocessOptions opt;
  opt.config = f.epsilon > 0 ? PartitionConfig::from_epsilon(f.epsilon) : PartitionConfig{};
  if (f.epsilon <= 0) {
    opt.config.tau = f.tau;
    opt.config.eta = f.eta;
  }
  opt.config.validate();
  opt.rng_seed = f.seed;
  opt.hash_seed = f.hash_seed;
  opt.eps0 = f.eps0;
  if (!f.costs.empty()) {
    opt.opening_costs = read_costs(f.costs);
    if (static_cast<int>(opt.opening_costs->size()) != n)
      throw Error(ErrorCode::BadInput, "cost file must list one cost per point");
  }
  return opt;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void emit(const json& j, const std::string& format, const std::function<void()>& human) {
  if (format == "json") std::cout << j.dump(2) << "\n";
  else human();
}

std::vector<std::vector<std::string>> read_query_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (!toks.empty()) out.push_back(std::move(toks));
  }
  return out;
}

PointId parse_id(const std::string& s) {
  size_t pos = 0;
  long v = std::stol(s, &pos);
  if (pos != s.size() || v < 0 || v > std::numeric_limits<PointId>::max())
    throw Error(ErrorCode::BadInput, "bad point id '" + s + "'");
  return static_cast<PointId>(v);
}

json edges_json(const std::vector<std::pair<PointId, PointId>>& edges) {
  json a = json::array();
  for (auto [u, v] : edges) a.push_back({u, v});
  return a;
}

// ---------------------------------------------------------------- generate

int cmd_generate(const std::string& family, int n, uint64_t seed, const std::string& out,
                 const std::string& costs_out) {
  MetricSpace ms = generate_family(family, n, seed);
  std::ofstream f(out);
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + out);
  f << std::setprecision(17);
  if (ms.source() == MetricSpace::Source::Matrix) write_matrix(f, ms);
  else write_points(f, ms);
  if (!costs_out.empty()) {
    std::ofstream c(costs_out);
    if (!c) throw Error(ErrorCode::IoError, "cannot open " + costs_out);
    std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    c << std::setprecision(17);
    for (int i = 0; i < n; ++i) c << u(rng) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- preprocess

int cmd_preprocess(const std::string& input, const std::string& fmt_in, const ConfigFlags& cf,
                   const std::string& out, const std::string& format) {
  auto t0 = std::chrono::steady_clock::now();
  MetricSpace ms = read_metric_file(input, fmt_in);
  auto opt = options_of(cf, ms.size());
  auto s = preprocess(ms, opt);
  double build_ms = ms_since(t0);
  save(*s, out);
  json j;
  j["schema"] = "dmot.preprocess/1";
  j["n"] = s->tree.n;
  j["tau"] = s->tree.config.tau;
  j["eta"] = s->tree.config.eta;
  j["r0"] = s->tree.config.r0;
  j["nodes"] = s->tree.node_count();
  j["meetings"] = s->tree.meetings.size();
  j["paths"] = s->nav.paths().size();
  j["fl_index"] = s->fl.has_value();
  j["entries"] = serialized_entry_count(*s);
  j["bytes"] = serialize(*s).size();
  j["time_ms"] = build_ms;
  emit(j, format, [&] {
    std::cout << "preprocessed n=" << s->tree.n << " nodes=" << s->tree.node_count()
              << " meetings=" << s->tree.meetings.size() << " bytes=" << j["bytes"]
              << " time_ms=" << build_ms << " -> " << out << "\n";
  });
  return 0;
}

// ---------------------------------------------------------------- query

void dump_spanner(std::ostream& out, size_t qi, const Pseudospanner& sp) {
  out << "# query " << qi << "\n" << std::setprecision(17);
  for (const auto& e : sp.edges) out << sp.vertices[e.u] << " " << sp.vertices[e.v] << " " << e.w << "\n";
}

int cmd_query(const std::string& kind, const std::string& structure, const std::string& queries,
              int r, const std::string& dump) {
  auto s = load(structure);
  const auto& t = s->tree;
  std::ofstream dump_out;
  if (!dump.empty()) {
    dump_out.open(dump);
    if (!dump_out) throw Error(ErrorCode::IoError, "cannot open " + dump);
  }
  json results = json::array();
  auto lines = read_query_lines(queries);
  for (size_t qi = 0; qi < lines.size(); ++qi) {
    const auto& toks = lines[qi];
    auto t0 = std::chrono::steady_clock::now();
    json res;
    std::vector<PointId> pts;
    auto spanner_on = [&](const std::vector<PointId>& q) {
      auto sp = build_pseudospanner(extract_subtree(t, s->nav, q), t.config);
      if (dump_out.is_open()) dump_spanner(dump_out, qi, sp);
      return sp;
    };
    if (kind == "steiner" || kind == "tsp" || kind == "kcenter" || kind == "fl-unrestricted") {
      for (const auto& tok : toks) pts.push_back(parse_id(tok));
      res["query"] = pts;
    }
    if (kind == "steiner") {
      auto sp = spanner_on(pts);
      auto tree = steiner_tree(sp);
      res["edges"] = edges_json(tree.edges);
      res["weight"] = tree.weight;
    } else if (kind == "tsp") {
      auto sp = spanner_on(pts);
      auto tour = tsp_tour(sp);
      res["order"] = tour.order;
      res["length"] = tour.length;
    } else if (kind == "kcenter") {
      auto sp = spanner_on(pts);
      auto cs = k_center(sp, r);
      res["centers"] = cs.centers;
      json assign = json::array();
      for (int32_t v = 0; v < sp.size(); ++v) assign.push_back({sp.vertices[v], cs.assignment[v]});
      res["assignment"] = assign;
      res["radius"] = cs.radius;
    } else if (kind == "forest") {
      if (toks.size() % 2) throw Error(ErrorCode::BadInput, "forest query needs id pairs");
      std::vector<std::pair<PointId, PointId>> pairs;
      for (size_t i = 0; i < toks.size(); i += 2) {
        pairs.push_back({parse_id(toks[i]), parse_id(toks[i + 1])});
        pts.push_back(pairs.back().first);
        pts.push_back(pairs.back().second);
      }
      auto sp = spanner_on(pts);
      auto forest = steiner_forest(sp, pairs);
      json pj = json::array();
      for (auto [a, b] : pairs) pj.push_back({a, b});
      res["pairs"] = pj;
      res["edges"] = edges_json(forest.edges);
      res["weight"] = forest.weight;
    } else if (kind == "fl-restricted") {
      // cities | facility:cost ...
      std::vector<PointId> cities, facs;
      std::vector<double> costs;
      bool after = false;
      for (const auto& tok : toks) {
        if (tok == "|") {
          after = true;
          continue;
        }
        if (!after) {
          cities.push_back(parse_id(tok));
          continue;
        }
        auto colon = tok.find(':');
        if (colon == std::string::npos) throw Error(ErrorCode::BadInput, "facility needs id:cost");
        facs.push_back(parse_id(tok.substr(0, colon)));
        std::string c = tok.substr(colon + 1);
        costs.push_back(c == "inf" ? std::numeric_limits<double>::infinity() : std::stod(c));
      }
      if (facs.empty()) throw Error(ErrorCode::NoFacilities, "no facilities listed");
      pts = cities;
      pts.insert(pts.end(), facs.begin(), facs.end());
      auto sp = spanner_on(pts);
      auto sol = facility_location_restricted(sp, cities, facs, costs);
      res["cities"] = cities;
      res["open"] = sol.open;
      res["assignment"] = edges_json(sol.assignment);
      res["opening_cost"] = sol.opening_cost;
      res["connection_cost"] = sol.connection_cost;
      res["cost"] = sol.cost;
    } else if (kind == "fl-unrestricted") {
      if (!s->fl) throw Error(ErrorCode::BadInput, "structure was built without opening costs");
      auto sol = fl_query_unrestricted(t, s->nav, *s->fl, pts);
      res["open"] = sol.open;
      res["assignment"] = edges_json(sol.assignment);
      res["opening_cost"] = sol.opening_cost;
      res["connection_cost"] = sol.connection_cost;
      res["cost"] = sol.cost;
    } else {
      throw CLI::ValidationError("query", "unknown query kind " + kind);
    }
    res["time_us"] = ms_since(t0) * 1000.0;
    results.push_back(res);
  }
  json j;
  j["schema"] = "dmot.query/1";
  j["kind"] = kind;
  j["results"] = results;
  std::cout << j.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------- dynamic

bool spans(const std::vector<TreeEdge>& edges, const std::set<PointId>& xs) {
  if (xs.empty()) return edges.empty();
  if (edges.size() + 1 != xs.size()) return false;
  std::map<PointId, PointId> up;
  for (PointId x : xs) up[x] = x;
  std::function<PointId(PointId)> find = [&](PointId x) { return up[x] == x ? x : up[x] = find(up[x]); };
  for (const auto& e : edges) {
    if (!xs.count(e.u) || !xs.count(e.v)) return false;
    PointId a = find(e.u), b = find(e.v);
    if (a == b) return false;
    up[a] = b;
  }
  return true;
}

int cmd_dynamic(const std::string& structure, const std::string& script, bool verify,
                const std::string& input, const std::string& fmt_in, const std::string& format) {
  auto s = load(structure);
  std::optional<MetricSpace> ms;
  if (verify) {
    if (input.empty()) throw CLI::ValidationError("--verify", "requires --input");
    ms = read_metric_file(input, fmt_in);
    if (ms->size() != s->tree.n) throw Error(ErrorCode::BadInput, "input does not match structure");
  }
  LayeredMst st(s->tree, s->nav, s->rng_seed);
  double bound = layered_mst_bound(s->tree.config);
  std::set<PointId> xs;
  json ops = json::array();
  long violations = 0;
  auto lines = read_query_lines(script);
  for (const auto& toks : lines) {
    json op;
    op["op"] = toks[0];
    auto t0 = std::chrono::steady_clock::now();
    int rebuilds = st.rebuilds();
    if (toks[0] == "ins" || toks[0] == "del") {
      if (toks.size() != 2) throw Error(ErrorCode::BadInput, "expected '" + toks[0] + " <id>'");
      PointId x = parse_id(toks[1]);
      op["id"] = x;
      if (toks[0] == "ins") {
        st.insert(x);
        xs.insert(x);
      } else {
        st.erase(x);
        xs.erase(x);
      }
    } else if (toks[0] != "check") {
      throw Error(ErrorCode::BadInput, "unknown script op " + toks[0]);
    }
    op["time_us"] = ms_since(t0) * 1000.0;
    op["k"] = st.size();
    op["weight"] = st.weight();
    op["rebuilt"] = st.rebuilds() > rebuilds;
    if (toks[0] == "check" || verify) {
      bool ok = spans(st.edges(), xs);
      op["spanning"] = ok;
      if (!ok) ++violations;
    }
    if (verify && xs.size() >= 2) {
      double opt = oracle::exact_mst(*ms, std::vector<PointId>(xs.begin(), xs.end())).weight;
      double ratio = st.weight() / opt;
      op["ratio"] = ratio;
      if (ratio > bound) ++violations;
    }
    ops.push_back(op);
  }
  json j;
  j["schema"] = "dmot.dynamic/1";
  j["bound"] = bound;
  j["ops"] = ops;
  j["final_k"] = st.size();
  j["rebuilds"] = st.rebuilds();
  j["root_rebuilds"] = st.root_rebuilds();
  j["violations"] = violations;
  emit(j, format, [&] {
    for (const auto& op : ops) std::cout << op.dump() << "\n";
    std::cout << "final k=" << st.size() << " rebuilds=" << st.rebuilds() << " violations=" << violations
              << "\n";
  });
  return violations ? kExitFail : 0;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::string& input, const std::string& fmt_in, const std::string& family, int n,
               uint64_t gen_seed, const ConfigFlags& cf, const std::string& structure,
               const std::string& format) {
  MetricSpace ms = input.empty() ? generate_family(family, n, gen_seed) : read_metric_file(input, fmt_in);
  auto opt = options_of(cf, ms.size());
  std::vector<SuiteResult> suites;
  std::unique_ptr<Structure> s;
  if (structure.empty()) {
    s = preprocess(ms, opt);
  } else {
    try {
      s = load(structure);
    } catch (const Error& e) {
      SuiteResult r;
      r.name = "load";
      r.pass = false;
      r.checked = r.violations = 1;
      r.detail = e.what();
      suites.push_back(r);
    }
  }
  VerifyOptions vo;
  vo.seed = cf.seed;
  if (s) {
    auto more = verify_structure(ms, *s, opt, vo);
    suites.insert(suites.end(), more.begin(), more.end());
  }
  bool pass = std::all_of(suites.begin(), suites.end(), [](const SuiteResult& r) { return r.pass; });
  json j;
  j["schema"] = "dmot.verify/1";
  j["n"] = ms.size();
  j["pass"] = pass;
  json arr = json::array();
  for (const auto& r : suites)
    arr.push_back({{"suite", r.name}, {"pass", r.pass}, {"checked", r.checked},
                   {"violations", r.violations}, {"detail", r.detail}});
  j["suites"] = arr;
  emit(j, format, [&] {
    for (const auto& r : suites)
      std::cout << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(18) << r.name << " checked="
                << r.checked << " violations=" << r.violations
                << (r.detail.empty() ? "" : "  " + r.detail) << "\n";
    std::cout << (pass ? "all suites passed" : "verification FAILED") << "\n";
  });
  return pass ? 0 : kExitFail;
}

// ---------------------------------------------------------------- bench

int cmd_bench(const std::vector<std::string>& families, const std::vector<int>& sizes, int k,
              const std::vector<int>& ks, int kn, int trials, uint64_t seed, const std::string& format) {
  json rows = json::array();
  json krows = json::array();
  for (const auto& family : families) {
    for (int n : sizes) {
      MetricSpace ms = generate_family(family, n, seed);
      auto t0 = std::chrono::steady_clock::now();
      auto s = preprocess(ms);
      double pre = ms_since(t0);
      auto qt = time_queries(*s, k, trials, seed);
      rows.push_back({{"family", family}, {"n", n}, {"k", qt.k}, {"preprocess_ms", pre},
                      {"bytes", serialize(*s).size()}, {"entries", serialized_entry_count(*s)},
                      {"median_query_us", qt.median_us}, {"spanner_edges", qt.mean_spanner_edges}});
    }
    if (!ks.empty()) {
      auto s = preprocess(generate_family(family, kn, seed));
      for (int kk : ks) {
        auto qt = time_queries(*s, kk, trials, seed + kk);
        krows.push_back({{"family", family}, {"n", kn}, {"k", qt.k}, {"median_query_us", qt.median_us},
                         {"spanner_edges", qt.mean_spanner_edges}});
      }
    }
  }
  json j;
  j["schema"] = "dmot.bench/1";
  j["vs_n"] = rows;
  j["vs_k"] = krows;
  emit(j, format, [&] {
    std::cout << std::left << std::setw(12) << "family" << std::setw(8) << "n" << std::setw(6) << "k"
              << std::setw(14) << "preproc_ms" << std::setw(12) << "bytes" << std::setw(14)
              << "query_us" << "growth\n";
    double first = 0.0;
    std::string fam;
    for (const auto& r : rows) {
      if (r["family"] != fam) fam = r["family"], first = r["median_query_us"];
      std::cout << std::setw(12) << std::string(r["family"]) << std::setw(8) << int(r["n"]) << std::setw(6)
                << int(r["k"]) << std::setw(14) << std::fixed << std::setprecision(1)
                << double(r["preprocess_ms"]) << std::setw(12) << size_t(r["bytes"]) << std::setw(14)
                << double(r["median_query_us"]) << std::setprecision(2)
                << double(r["median_query_us"]) / first << "x\n";
    }
    if (!krows.empty()) {
      std::cout << "\n" << std::setw(12) << "family" << std::setw(8) << "n" << std::setw(6) << "k"
                << std::setw(14) << "query_us" << "per-doubling\n";
      double prev = 0.0;
      fam.clear();
      for (const auto& r : krows) {
        if (r["family"] != fam) fam = r["family"], prev = 0.0;
        double q = r["median_query_us"];
        std::cout << std::setw(12) << std::string(r["family"]) << std::setw(8) << int(r["n"]) << std::setw(6)
                  << int(r["k"]) << std::setw(14) << std::setprecision(1) << q;
        if (prev > 0) std::cout << std::setprecision(2) << q / prev << "x";
        std::cout << "\n";
        prev = q;
      }
    }
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Preprocess a metric once; answer Steiner, TSP, k-center, facility-location and MST queries"};
  app.require_subcommand(1);
  std::string input, fmt_in = "points", out, structure;

  auto* gen = app.add_subcommand("generate", "write a random instance");
  std::string family = "uniform2d", costs_out;
  int n = 256;
  uint64_t gen_seed = 1;
  gen->add_option("--family", family, "uniform2d|clustered2d|grid|matrix")
      ->check(CLI::IsMember({"uniform2d", "clustered2d", "grid", "matrix"}));
  gen->add_option("--n", n, "point count")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", out, "output file")->required();
  gen->add_option("--costs-out", costs_out, "also write random opening costs");

  auto* pre = app.add_subcommand("preprocess", "build and save the structure");
  ConfigFlags pcf;
  pre->add_option("--input", input, "metric file")->required();
  pre->add_option("--input-format", fmt_in, "points|matrix")->check(CLI::IsMember({"points", "matrix"}));
  pre->add_option("--out", out, "structure file")->required();
  add_config(pre, pcf);
  std::string pre_format = "human";
  pre->add_option("--format", pre_format, "human|json")->check(CLI::IsMember({"human", "json"}));

  auto* query = app.add_subcommand("query", "answer queries from a structure file");
  std::string kind, queries, dump;
  int r = 1;
  query->add_option("kind", kind, "steiner|forest|tsp|kcenter|fl-restricted|fl-unrestricted")
      ->required()
      ->check(CLI::IsMember({"steiner", "forest", "tsp", "kcenter", "fl-restricted", "fl-unrestricted"}));
  query->add_option("--structure", structure, "structure file")->required();
  query->add_option("--queries", queries, "one query per line")->required();
  query->add_option("--r", r, "center count for kcenter");
  query->add_option("--dump-spanner", dump, "write spanner edges as 'u v weight'");

  auto* dyn = app.add_subcommand("dynamic", "run an insert/delete script on the layered MST");
  std::string script, dyn_format = "json";
  bool verify = false;
  dyn->add_option("--structure", structure, "structure file")->required();
  dyn->add_option("--script", script, "lines: ins <id> | del <id> | check")->required();
  dyn->add_flag("--verify", verify, "compare with the exact MST after every op (needs --input)");
  dyn->add_option("--input", input, "metric file for --verify");
  dyn->add_option("--input-format", fmt_in, "points|matrix")->check(CLI::IsMember({"points", "matrix"}));
  dyn->add_option("--format", dyn_format, "human|json")->check(CLI::IsMember({"human", "json"}));

  auto* ver = app.add_subcommand("verify", "check a structure with the brute-force oracles");
  ConfigFlags vcf;
  std::string ver_format = "human";
  ver->add_option("--input", input, "metric file (else a generated instance)");
  ver->add_option("--input-format", fmt_in, "points|matrix")->check(CLI::IsMember({"points", "matrix"}));
  ver->add_option("--family", family, "generator family")
      ->check(CLI::IsMember({"uniform2d", "clustered2d", "grid", "matrix"}));
  ver->add_option("--n", n, "generated point count")->check(CLI::PositiveNumber);
  ver->add_option("--gen-seed", gen_seed, "generator seed");
  ver->add_option("--structure", structure, "verify this file instead of a fresh build");
  add_config(ver, vcf);
  ver->add_option("--format", ver_format, "human|json")->check(CLI::IsMember({"human", "json"}));

  auto* bench = app.add_subcommand("bench", "timing table: preprocessing and query time vs n and k");
  std::vector<std::string> families{"uniform2d"};
  std::vector<int> sizes{1024, 2048, 4096, 8192, 16384}, ks{8, 16, 32, 64, 128};
  int bk = 32, kn = 4096, trials = 101;
  uint64_t bseed = 1;
  std::string bench_format = "human";
  bench->add_option("--families", families, "families")->delimiter(',');
  bench->add_option("--sizes", sizes, "n values")->delimiter(',');
  bench->add_option("--k", bk, "query size for the n sweep");
  bench->add_option("--ks", ks, "query sizes for the k sweep")->delimiter(',');
  bench->add_option("--kn", kn, "n for the k sweep");
  bench->add_option("--trials", trials, "queries per point")->check(CLI::PositiveNumber);
  bench->add_option("--seed", bseed, "seed");
  bench->add_option("--format", bench_format, "human|json")->check(CLI::IsMember({"human", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  try {
    if (*gen) return cmd_generate(family, n, gen_seed, out, costs_out);
    if (*pre) return cmd_preprocess(input, fmt_in, pcf, out, pre_format);
    if (*query) return cmd_query(kind, structure, queries, r, dump);
    if (*dyn) return cmd_dynamic(structure, script, verify, input, fmt_in, dyn_format);
    if (*ver) return cmd_verify(input, fmt_in, family, n, gen_seed, vcf, structure, ver_format);
    if (*bench) return cmd_bench(families, sizes, bk, ks, kn, trials, bseed, bench_format);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
