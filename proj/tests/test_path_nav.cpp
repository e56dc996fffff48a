#include <cmath>

#include "doctest.h"
#include "dmot/oracles.hpp"
#include "dmot/path_nav.hpp"
#include "test_util.hpp"

using namespace dmot;
using testutil::build_tree;
using testutil::handmade_tree;
using testutil::line;

namespace {

int ceil_log2(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  return k;
}

std::vector<PartitionConfig> configs() {
  PartitionConfig tau3;
  tau3.tau = 3.0;
  return {PartitionConfig{}, tau3, PartitionConfig::from_epsilon(0.5)};
}

void check_all(const MetricSpace& ms, const PartitionConfig& cfg) {
  auto t = build_tree(ms, cfg);
  PathNav nav(t);
  int n = t.n;
  Level top = t.level(t.root);
  for (PointId u = 0; u < n; ++u) {
    for (PointId v = u + 1; v < n; ++v) {
      Level m = nav.meet(u, v);
      REQUIRE(m == oracle::naive_meet(t, u, v));
      REQUIRE(m == nav.meet(v, u));
    }
  }
  int bound = 3 * nav.x() + 2;
  for (PointId v = 0; v < n; ++v) {
    Level prev = -1;
    for (Level i = 0; i <= top + 1; ++i) {
      auto want = oracle::naive_meeting_jump(t, v, i);
      if (!want) {
        CHECK_THROWS_AS(nav.meeting_jump(v, i), Error);
        continue;
      }
      auto got = nav.meeting_jump(v, i);
      REQUIRE(got.first == want->first);
      REQUIRE(got.second == want->second);
      REQUIRE(got.second.level >= prev);
      prev = got.second.level;
      // the two jump variants agree on the node alive at the meeting level
      REQUIRE(nav.level_ancestor_jump(v, got.second.level) == got.first);
    }
    NodeId below = t.leaf_of[v];
    for (Level j = 0; j <= top + 2; ++j) {
      int steps = 0;
      NodeId a = nav.level_ancestor_jump(v, j, &steps);
      REQUIRE(a == oracle::naive_level_ancestor(t, v, j));
      REQUIRE(steps <= bound);
      REQUIRE(t.is_ancestor(a, below));
      below = a;
    }
    REQUIRE(nav.paths_of(t.leaf_of[v]).size() <= static_cast<size_t>(std::max(1, ceil_log2(n))));
  }
  REQUIRE(nav.paths_entry_count() <=
          static_cast<size_t>((2 * n - 1) * std::max(1, ceil_log2(n))));
}

}  // namespace

TEST_CASE("star: every child edge is its own path") {
  // root 5 over leaves 0..4
  auto t = handmade_tree(5, {5, 5, 5, 5, 5, kNoNode}, {0, 0, 0, 0, 0, 3});
  PathNav nav(t);
  REQUIRE(nav.paths().size() == 5);
  for (size_t p = 0; p < 5; ++p) {
    CHECK(nav.paths()[p].vertices == std::vector<NodeId>{5, static_cast<NodeId>(p)});
    CHECK(nav.paths()[p].depth == 0);
  }
  for (PointId v = 0; v < 5; ++v) {
    CHECK(nav.level_ancestor_jump(v, 0) == v);
    CHECK(nav.level_ancestor_jump(v, 2) == v);
    CHECK(nav.level_ancestor_jump(v, 3) == 5);
  }
}

TEST_CASE("caterpillar: one long heavy path plus single edges") {
  // inner nodes 8..14: node 8 = {0,1}; node 8+k = {node 7+k, leaf k+1}
  int n = 8;
  std::vector<NodeId> parent(15, kNoNode);
  std::vector<Level> level(15, 0);
  parent[0] = parent[1] = 8;
  level[8] = 1;
  for (int k = 1; k < 7; ++k) {
    parent[7 + k] = 8 + k;
    parent[k + 1] = 8 + k;
    level[8 + k] = k + 1;
  }
  auto t = handmade_tree(n, parent, level);
  PathNav nav(t);
  // root 14 has children 7 (leaf) and 13: two root paths; below, each inner
  // node continues to its inner child and opens a path for its leaf.
  size_t longest = 0;
  int single = 0;
  for (const auto& p : nav.paths()) {
    longest = std::max(longest, p.vertices.size());
    if (p.vertices.size() == 2) ++single;
  }
  CHECK(longest == 8);  // 14, 13, ..., 8, 0
  CHECK(single == static_cast<int>(nav.paths().size()) - 1);
  for (PointId v = 0; v < n; ++v) {
    for (Level j = 0; j <= 9; ++j) {
      CHECK(nav.level_ancestor_jump(v, j) == oracle::naive_level_ancestor(t, v, j));
    }
  }
}

TEST_CASE("closer pairs meet no later") {
  auto t = build_tree(line({0, 1, 100}));
  PathNav nav(t);
  CHECK(nav.meet(0, 1) < nav.meet(0, 2));
  CHECK(nav.meet(0, 1) == 2);
  CHECK(nav.meet(0, 1) == t.know_query(0, 1));
  CHECK(nav.level_ancestor_jump(0, 100) == t.root);
  CHECK(nav.level_ancestor_jump(0, 0) == 0);
  CHECK_THROWS_AS(nav.meet(0, 3), Error);
}

TEST_CASE("meeting jump examples") {
  auto t = build_tree(generate_uniform2d(60, 3));
  PathNav nav(t);
  for (PointId v = 0; v < t.n; ++v) {
    auto first = nav.meeting_jump(v, 0);
    // i = 0 gives the very first meeting on the walk: the leaf's first one
    const auto& leaf_list = t.nodes[t.leaf_of[v]].meetings;
    REQUIRE(!leaf_list.empty());
    CHECK(first.second == t.meetings[leaf_list.front()]);
    // inclusive at an existing meeting level
    auto again = nav.meeting_jump(v, first.second.level);
    CHECK(again.second == first.second);
  }
  CHECK_THROWS_AS(nav.meeting_jump(0, t.level(t.root)), Error);
}

TEST_CASE("navigation agrees with upward walks on random trees") {
  for (const auto& cfg : configs()) {
    for (std::string fam : {"uniform2d", "clustered2d", "grid", "matrix"}) {
      check_all(generate_family(fam, 150, 7), cfg);
    }
  }
}

TEST_CASE("navigation agrees with upward walks at n = 512") {
  check_all(generate_uniform2d(512, 11), PartitionConfig{});
  check_all(generate_clustered2d(512, 12), PartitionConfig{});
}

TEST_CASE("meet matches the level-by-level construction") {
  for (const auto& cfg : configs()) {
    for (std::string fam : {"uniform2d", "clustered2d", "matrix"}) {
      auto ms = generate_family(fam, 40, 5);
      auto t = build_tree(ms, cfg);
      PathNav nav(t);
      auto naive = oracle::naive_build(ms, t.config);
      for (PointId u = 0; u < t.n; ++u)
        for (PointId v = u + 1; v < t.n; ++v)
          REQUIRE(nav.meet(u, v) == oracle::naive_first_knowing(naive, ms, t.config, u, v));
    }
  }
}

TEST_CASE("meet sandwiches the distance") {
  auto ms = generate_uniform2d(512, 21);
  PartitionConfig cfg;
  auto t = build_tree(ms, cfg);
  PathNav nav(t);
  double D = t.config.sandwich_factor();
  for (PointId u = 0; u < t.n; ++u) {
    for (PointId v = u + 1; v < t.n; ++v) {
      Level j = nav.meet(u, v);
      double lo = t.config.radius(j - 1);
      REQUIRE(lo <= ms.d(u, v));
      REQUIRE(ms.d(u, v) < D * lo);
    }
  }
}

TEST_CASE("known sets agree with brute force") {
  for (std::string fam : {"uniform2d", "clustered2d", "matrix"}) {
    auto ms = generate_family(fam, 60, 9);
    auto t = build_tree(ms);
    PathNav nav(t);
    auto naive = oracle::naive_build(ms, t.config);
    Level top = t.level(t.root);
    for (PointId x = 0; x < t.n; ++x) {
      for (Level i = 0; i <= top; i += 2) {
        for (Level j = i; j <= top; j += 3) {
          auto got = nav.known_sets_in_range(x, i, j);
          REQUIRE(got == oracle::naive_known_sets(t, x, i, j));
          std::vector<std::pair<Level, std::vector<PointId>>> as_sets;
          for (auto [l, z] : got) as_sets.push_back({l, t.points_of(z)});
          std::sort(as_sets.begin(), as_sets.end());
          REQUIRE(as_sets == oracle::naive_known_sets_metric(naive, ms, t.config, x, i, j));
          if (i >= 1) REQUIRE(nav.known_sets_in_range(x, i, j, i - 1) == got);
        }
      }
    }
  }
}

TEST_CASE("known sets: root level and first meeting") {
  auto t = build_tree(line({0, 1, 3, 7, 20}));
  PathNav nav(t);
  Level top = t.level(t.root);
  auto root_only = nav.known_sets_in_range(0, top, top);
  CHECK(root_only == std::vector<std::pair<Level, NodeId>>{{top, t.root}});
  for (PointId x = 0; x < t.n; ++x) {
    auto [node, m] = nav.meeting_jump(x, 0);
    auto got = nav.known_sets_in_range(x, m.level, m.level);
    CHECK(std::find(got.begin(), got.end(), std::make_pair(m.level, m.other(node))) != got.end());
    CHECK(got == oracle::naive_known_sets(t, x, m.level, m.level));
  }
  CHECK_THROWS_AS(nav.known_sets_in_range(0, 3, 2), Error);
}
