#include <random>

#include "doctest.h"
#include "dmot/oracles.hpp"
#include "dmot/spanner.hpp"
#include "test_util.hpp"

using namespace dmot;
using testutil::build_tree;
using testutil::line;

namespace {

std::vector<PointId> random_subset(std::mt19937_64& rng, int n, int k) {
  std::vector<PointId> s(n);
  for (int i = 0; i < n; ++i) s[i] = i;
  std::shuffle(s.begin(), s.end(), rng);
  s.resize(k);
  return s;
}

// Largest d_H / d over the subset; checks d <= d_H and w >= d on every edge.
double check_stretch(const MetricSpace& ms, const Pseudospanner& sp) {
  for (const auto& e : sp.edges) REQUIRE(ms.d(sp.vertices[e.u], sp.vertices[e.v]) <= e.w);
  auto dh = spanner_distance_matrix(sp);
  double worst = 1.0;
  for (int32_t a = 0; a < sp.size(); ++a) {
    for (int32_t b = a + 1; b < sp.size(); ++b) {
      double d = ms.d(sp.vertices[a], sp.vertices[b]);
      REQUIRE(d <= dh[a][b] * (1 + 1e-12));
      REQUIRE(dh[a][b] == doctest::Approx(dh[b][a]).epsilon(1e-12));
      worst = std::max(worst, dh[a][b] / d);
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("constants at tau = 2, eta = 2") {
  PartitionConfig c;
  c.r0 = 1.0;
  CHECK(2.0 * c.leader_factor() == 1.0);
  CHECK(c.sandwich_factor() == 6.0);
  CHECK(c.spanner_stretch() == 18.0);
}

TEST_CASE("two points: one meeting edge") {
  auto ms = line({0, 1, 3, 7});
  auto t = build_tree(ms);
  PathNav nav(t);
  auto et = extract_subtree(t, nav, {0, 3});
  auto sp = build_pseudospanner(et, t.config);
  REQUIRE(sp.size() == 2);
  REQUIRE(sp.edges.size() == 1);
  Level j = nav.meet(0, 3);
  CHECK(sp.edges[0].w == doctest::Approx(6.0 * t.config.radius(j - 1)));
  double dh = spanner_shortest_paths(sp, {0}).dist[1];
  CHECK(7.0 <= dh);
  CHECK(dh <= 18.0 * 7.0);
  CHECK(sp.leader_of_node[et.root] == 0);
  CHECK(sp.beaten_at[1] == et.nodes[et.root].level);
  CHECK(sp.beaten_at[0] == kInfLevel);
}

TEST_CASE("single vertex") {
  auto t = build_tree(line({0, 1, 3}));
  PathNav nav(t);
  auto sp = build_pseudospanner(extract_subtree(t, nav, {2}), t.config);
  CHECK(sp.size() == 1);
  CHECK(sp.edges.empty());
  CHECK(spanner_shortest_paths(sp, {0}).dist[0] == 0.0);
  CHECK_THROWS_AS(sp.vertex(0), Error);
}

TEST_CASE("father-son weights are r_j at tau = 2, eta = 2") {
  auto ms = generate_uniform2d(300, 2);
  auto t = build_tree(ms);
  PathNav nav(t);
  std::mt19937_64 rng(3);
  auto et = extract_subtree(t, nav, random_subset(rng, 300, 40));
  auto leaders = assign_leaders(et);
  for (int32_t x = 0; x < et.size(); ++x) {
    auto mem = et.members(x);
    REQUIRE(std::binary_search(mem.begin(), mem.end(), leaders[x]));
    REQUIRE(leaders[x] == mem.front());
  }
  auto sp = build_pseudospanner(et, t.config);
  for (int32_t x = 0; x < et.size(); ++x) {
    for (int32_t c : et.nodes[x].children) {
      if (leaders[c] == leaders[x]) continue;
      int32_t u = sp.vertex(leaders[c]), v = sp.vertex(leaders[x]);
      auto it = std::find_if(sp.adj[u].begin(), sp.adj[u].end(),
                             [&](const auto& p) { return p.first == v; });
      REQUIRE(it != sp.adj[u].end());
      REQUIRE(it->second <= t.config.radius(et.nodes[x].level));
    }
  }
}

TEST_CASE("shortest paths match Floyd-Warshall") {
  auto ms = generate_clustered2d(400, 4);
  auto t = build_tree(ms);
  PathNav nav(t);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    auto sp = build_pseudospanner(extract_subtree(t, nav, random_subset(rng, 400, 64)), t.config);
    int32_t k = sp.size();
    std::vector<std::vector<double>> fw(k, std::vector<double>(k, kInf));
    for (int32_t v = 0; v < k; ++v) fw[v][v] = 0;
    for (const auto& e : sp.edges) fw[e.u][e.v] = fw[e.v][e.u] = std::min(fw[e.u][e.v], e.w);
    for (int32_t m = 0; m < k; ++m)
      for (int32_t a = 0; a < k; ++a)
        for (int32_t b = 0; b < k; ++b) fw[a][b] = std::min(fw[a][b], fw[a][m] + fw[m][b]);
    auto dh = spanner_distance_matrix(sp);
    for (int32_t a = 0; a < k; ++a)
      for (int32_t b = 0; b < k; ++b) REQUIRE(dh[a][b] == doctest::Approx(fw[a][b]).epsilon(1e-12));
  }
}

TEST_CASE("stretch within C on random subsets") {
  std::mt19937_64 rng(1);
  for (std::string fam : {"uniform2d", "clustered2d", "grid", "matrix"}) {
    auto ms = generate_family(fam, 1024, 6);
    auto t = build_tree(ms);
    PathNav nav(t);
    double worst = 1.0;
    for (int trial = 0; trial < 8; ++trial) {
      int k = 2 + static_cast<int>(rng() % 63);
      auto sp = build_pseudospanner(extract_subtree(t, nav, random_subset(rng, 1024, k)), t.config);
      REQUIRE(sp.edges.size() <= static_cast<size_t>(64 * k));
      REQUIRE(sp.edges.size() + 1 >= static_cast<size_t>(k));
      worst = std::max(worst, check_stretch(ms, sp));
    }
    CHECK(worst <= 18.0);
    MESSAGE(fam << " worst stretch " << worst);
  }
}

TEST_CASE("fine parameters give stretch 1 + eps") {
  // tau = 1 + eps/3 with eta large enough that C(eta, tau) <= 1 + eps.
  PartitionConfig cfg;
  cfg.tau = 1.0 + 0.5 / 3.0;
  cfg.eta = 11;
  REQUIRE(cfg.spanner_stretch() <= 1.5);
  auto ms = generate_uniform2d(200, 12);
  auto t = build_tree(ms, cfg);
  PathNav nav(t);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 6; ++trial) {
    auto sp = build_pseudospanner(extract_subtree(t, nav, random_subset(rng, 200, 64)), t.config);
    CHECK(check_stretch(ms, sp) <= 1.5);
  }
  // The sandwich-tuned parameters alone bound the stretch by C(eta, tau).
  auto eps = PartitionConfig::from_epsilon(0.5);
  auto t2 = build_tree(ms, eps);
  PathNav nav2(t2);
  for (int trial = 0; trial < 4; ++trial) {
    auto sp = build_pseudospanner(extract_subtree(t2, nav2, random_subset(rng, 200, 64)), t2.config);
    CHECK(check_stretch(ms, sp) <= t2.config.spanner_stretch());
  }
}
