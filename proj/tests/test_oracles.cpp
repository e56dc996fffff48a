#include <random>

#include "doctest.h"
#include "dmot/oracles.hpp"

using namespace dmot;

namespace {

std::vector<std::vector<double>> matrix_of(const MetricSpace& ms) {
  std::vector<std::vector<double>> d(ms.size(), std::vector<double>(ms.size()));
  for (int u = 0; u < ms.size(); ++u)
    for (int v = 0; v < ms.size(); ++v) d[u][v] = ms.d(u, v);
  return d;
}

}  // namespace

TEST_CASE("mst closed forms and cross-check") {
  auto two = MetricSpace::from_points({{0, 0}, {3, 4}});
  CHECK(oracle::exact_mst(two, {0}).weight == 0.0);
  CHECK(oracle::exact_mst(two, {0, 1}).weight == 5.0);
  auto line = MetricSpace::from_points({{0}, {1}, {3}, {7}});
  CHECK(oracle::exact_mst(line, {0, 1, 2, 3}).weight == 7.0);
  for (uint64_t s = 1; s <= 10; ++s) {
    auto ms = generate_uniform2d(40, s);
    std::vector<PointId> all(40);
    for (int i = 0; i < 40; ++i) all[i] = i;
    auto k = oracle::exact_mst(ms, all);
    CHECK(k.edges.size() == 39);
    CHECK(k.weight == doctest::Approx(oracle::exact_mst_prim(ms, all)).epsilon(1e-12));
  }
}

TEST_CASE("tsp closed forms and cross-check") {
  auto tri = matrix_of(MetricSpace::from_points({{0, 0}, {3, 0}, {0, 4}}));
  CHECK(oracle::exact_tsp(tri) == doctest::Approx(12.0));
  auto col = matrix_of(MetricSpace::from_points({{0}, {2}, {5}, {9}}));
  CHECK(oracle::exact_tsp(col) == doctest::Approx(18.0));
  for (uint64_t s = 1; s <= 8; ++s) {
    auto d = matrix_of(generate_uniform2d(8, s));
    CHECK(oracle::exact_tsp(d) == doctest::Approx(oracle::exact_tsp_enumerate(d)).epsilon(1e-12));
  }
}

TEST_CASE("steiner closed forms and cross-check") {
  auto ms = generate_uniform2d(12, 3);
  auto d = matrix_of(ms);
  CHECK(oracle::exact_steiner(d, {2, 7}) == doctest::Approx(d[2][7]));
  std::vector<int> all(12);
  std::vector<PointId> allp(12);
  for (int i = 0; i < 12; ++i) all[i] = allp[i] = i;
  CHECK(oracle::exact_steiner(d, all) == doctest::Approx(oracle::exact_mst(ms, allp).weight));
  // Star: the center is the only useful Steiner point.
  auto star = matrix_of(MetricSpace::from_points({{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}}));
  CHECK(oracle::exact_steiner(star, {1, 2, 3, 4}) == doctest::Approx(4.0));
  std::mt19937_64 rng(5);
  for (uint64_t s = 1; s <= 10; ++s) {
    auto dd = matrix_of(generate_uniform2d(12, s + 10));
    std::vector<int> terms;
    for (int i = 0; i < 12; ++i)
      if (rng() % 2) terms.push_back(i);
    if (terms.size() < 2) terms = {0, 1, 2};
    CHECK(oracle::exact_steiner(dd, terms) ==
          doctest::Approx(oracle::exact_steiner_enumerate(dd, terms)).epsilon(1e-12));
  }
}

TEST_CASE("steiner forest") {
  auto d = matrix_of(MetricSpace::from_points({{0}, {1}, {10}, {11}, {5}}));
  CHECK(oracle::exact_steiner_forest(d, {}) == 0.0);
  CHECK(oracle::exact_steiner_forest(d, {{0, 1}}) == doctest::Approx(1.0));
  CHECK(oracle::exact_steiner_forest(d, {{0, 1}, {2, 3}}) == doctest::Approx(2.0));
  CHECK(oracle::exact_steiner_forest(d, {{0, 1}, {2, 3}, {1, 2}}) == doctest::Approx(11.0));
  auto dd = matrix_of(generate_uniform2d(10, 4));
  CHECK(oracle::exact_steiner_forest(dd, {{0, 3}, {3, 5}}) ==
        doctest::Approx(oracle::exact_steiner(dd, {0, 3, 5})));
}

TEST_CASE("facility location and k-center") {
  std::vector<std::vector<double>> dist{{1, 5}, {4, 2}, {3, 3}};
  CHECK(oracle::exact_fl(dist, {0, 0}) == doctest::Approx(1 + 2 + 3));
  CHECK(oracle::exact_fl({{7}}, {4}) == doctest::Approx(11));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::vector<double>> dd(5, std::vector<double>(6));
    std::vector<double> open(6);
    for (auto& row : dd)
      for (auto& x : row) x = double(rng() % 100);
    for (auto& x : open) x = double(rng() % 100);
    CHECK(oracle::exact_fl(dd, open) == oracle::exact_fl_gray(dd, open));
  }
  auto d = matrix_of(MetricSpace::from_points({{0}, {1}, {10}, {12}}));
  CHECK(oracle::exact_k_center(d, 4) == 0.0);
  CHECK(oracle::exact_k_center(d, 2) == doctest::Approx(2.0));
  CHECK(oracle::exact_k_center(d, 1) == doctest::Approx(10.0));
}

TEST_CASE("naive construction on two points") {
  auto ms = MetricSpace::from_matrix({{0, 1}, {1, 0}});
  PartitionConfig cfg;
  cfg.r0 = 0.5;
  auto t = oracle::naive_build(ms, cfg);
  CHECK(t.levels.size() == 5);
  CHECK(t.levels.back().sets.size() == 1);
  CHECK(oracle::naive_first_knowing(t, ms, cfg, 0, 1) == 2);
  CHECK(t.meetings.size() == 1);
}
