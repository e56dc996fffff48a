#include "doctest.h"
#include "dmot/oracles.hpp"
#include "dmot/partition.hpp"

using namespace dmot;

namespace {

PartitionTree build(const MetricSpace& ms, PartitionConfig cfg = {}) {
  return build_partition_tree(ms, compute_params(ms), cfg);
}

MetricSpace line(std::vector<double> xs) {
  std::vector<std::vector<double>> pts;
  for (double x : xs) pts.push_back({x});
  return MetricSpace::from_points(pts);
}

// Compares the merge forest and meetings with the level-by-level construction.
void check_against_naive(const MetricSpace& ms, const PartitionConfig& cfg) {
  auto t = build(ms, cfg);
  auto naive = oracle::naive_build(ms, t.config);
  std::map<std::vector<PointId>, Level> nodes;
  for (NodeId x = 0; x < static_cast<NodeId>(t.nodes.size()); ++x) {
    nodes.emplace(t.members(x), t.nodes[x].level);
  }
  REQUIRE(nodes.size() == t.nodes.size());
  REQUIRE(nodes == naive.nodes);
  std::map<std::pair<std::vector<PointId>, std::vector<PointId>>, Level> meetings;
  for (const auto& m : t.meetings) {
    auto a = t.members(m.a), b = t.members(m.b);
    if (b < a) std::swap(a, b);
    meetings.emplace(std::make_pair(a, b), m.level);
  }
  REQUIRE(meetings.size() == t.meetings.size());
  REQUIRE(meetings == naive.meetings);
  REQUIRE(t.nodes[t.root].level == naive.levels.back().j);
}

}  // namespace

TEST_CASE("carving") {
  auto one = line({0, 5});
  auto s = carve_partition({0}, 1.0, one, 2);
  REQUIRE(s.size() == 1);
  CHECK(s[0].members == std::vector<PointId>{0});
  auto two = line({0, 10});
  // ball radius 2^-3 * 8 = 1
  CHECK(carve_partition({0, 1}, 8.0, two, 2).size() == 2);
  auto three = line({0, 0.4, 10});
  auto c = carve_partition({2, 1, 0}, 4.0, three, 2);  // ball radius 0.5
  REQUIRE(c.size() == 2);
  CHECK(c[0].leader == 0);
  CHECK(c[0].members == std::vector<PointId>{0, 1});
  CHECK(c[1].members == std::vector<PointId>{2});
}

TEST_CASE("two points") {
  auto ms = MetricSpace::from_matrix({{0, 1}, {1, 0}});
  auto t = build(ms);
  // r0 = 0.5, r_j = 0.5 * 2^j; merge when r_j / 4 > 1, i.e. j = 4; the two
  // singletons know each other once r_j > 1, i.e. j = 2.
  REQUIRE(t.nodes.size() == 3);
  CHECK(t.nodes[t.root].level == 4);
  REQUIRE(t.meetings.size() == 1);
  CHECK(t.meetings[0] == Meeting{0, 1, 2});
  CHECK(t.levels == std::vector<Level>{0, 2, 4});
  CHECK(!knows_at_level(t, 1, 0, 1));
  CHECK(knows_at_level(t, 2, 0, 1));
  CHECK(knows_at_level(t, 0, 1, 1));
  CHECK_THROWS_AS(knows_at_level(t, 4, 0, 1), Error);
}

TEST_CASE("collinear three points") {
  auto ms = line({0, 1, 100});
  auto t = build(ms);
  REQUIRE(t.nodes.size() == 5);
  // {0,1} merge at level 4 (r0 = 0.5); {0,1} and {100} at 2^-2 * 0.5 * 2^j > 100.
  CHECK(t.members(3) == std::vector<PointId>{0, 1});
  CHECK(t.nodes[3].level == 4);
  CHECK(t.members(t.root) == std::vector<PointId>{0, 1, 2});
  CHECK(t.nodes[t.root].level == 10);
  check_against_naive(ms, {});
}

TEST_CASE("ball test at a fixed level") {
  auto ms = line({0, 1, 3});
  PartitionConfig cfg;
  cfg.tau = 3.0;
  auto t = build(ms, cfg);  // r0 = 0.5, r_1 = 1.5
  CHECK(t.config.radius(1) == 1.5);
  CHECK(!knows_at_level(t, 1, 0, 2));
  CHECK(!knows_at_level(t, 1, 1, 2));
  CHECK(knows_at_level(t, 1, 0, 1));
  auto view = t.level_view(1);
  CHECK(view.sets.size() == 3);
  CHECK(view.knows[0] == std::vector<int>{1});
}

TEST_CASE("inadmissible configurations") {
  auto ms = line({0, 1});
  PartitionConfig bad;
  bad.eta = 1;
  CHECK_THROWS_AS(build(ms, bad), Error);
  bad = {};
  bad.tau = 1.2;  // needs tau >= 1 + 1/(2^(eta-1)-1) = 2 at eta = 2
  CHECK_THROWS_AS(build(ms, bad), Error);
  bad = {};
  bad.tau = 5.0;  // exceeds 2^eta
  CHECK_THROWS_AS(build(ms, bad), Error);
  auto e = PartitionConfig::from_epsilon(0.5);
  CHECK(e.tau == doctest::Approx(1.0 + 0.5 / 3));
  CHECK(e.eta == 7);
  CHECK(e.admissible());
  CHECK(e.sandwich_factor() < 1.5);
  PartitionConfig d;
  CHECK(d.sandwich_factor() == 6.0);
  CHECK(d.spanner_stretch() == 18.0);
  CHECK(d.leader_factor() == 0.5);
}

TEST_CASE("agrees with the level-by-level construction") {
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    check_against_naive(generate_uniform2d(90, seed), {});
    check_against_naive(generate_clustered2d(80, seed), {});
    check_against_naive(generate_matrix(40, seed), {});
  }
  check_against_naive(generate_grid(64), {});
  check_against_naive(generate_grid(50), {});
  check_against_naive(generate_uniform2d(60, 9), PartitionConfig::from_epsilon(0.5));
  PartitionConfig c3;
  c3.tau = 3.0;
  c3.eta = 3;
  check_against_naive(generate_uniform2d(70, 10), c3);
}

TEST_CASE("structural properties") {
  auto ms = generate_uniform2d(300, 42);
  auto t = build(ms);
  double factor = t.config.leader_factor();
  CHECK(static_cast<int>(t.nodes.size()) <= 2 * ms.size() - 1);
  for (NodeId x = 0; x < static_cast<NodeId>(t.nodes.size()); ++x) {
    const auto& node = t.nodes[x];
    if (!node.children.empty()) CHECK(node.children.size() >= 2);
    for (PointId p : t.members(x)) {
      REQUIRE(ms.d(p, node.leader) < factor * t.config.radius(node.level));
      REQUIRE(ms.d(p, node.leader) <= node.rad * (1 + 1e-12));
    }
    // children know each other while alive below the parent
    for (size_t i = 0; i < node.children.size(); ++i)
      for (size_t k = i + 1; k < node.children.size(); ++k)
        CHECK(knows_at_level(t, node.level - 1, node.children[i], node.children[k]));
  }
  for (const auto& m : t.meetings) {
    REQUIRE(m.a < m.b);
    REQUIRE(knows_at_level(t, m.level, m.a, m.b));
    Level lo = std::max(t.nodes[m.a].level, t.nodes[m.b].level);
    if (m.level > lo) REQUIRE(!knows_at_level(t, m.level - 1, m.a, m.b));
  }
}
