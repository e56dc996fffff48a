#include "dmot/bench.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

#include "dmot/extraction.hpp"
#include "dmot/spanner.hpp"

namespace dmot {

QueryTiming time_queries(const Structure& s, int k, int trials, uint64_t seed, int repeat) {
  int n = s.tree.n;
  k = std::min(k, n);
  std::mt19937_64 rng(seed);
  std::vector<PointId> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  std::vector<double> times;
  double edges = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    // partial shuffle: the first k entries become a uniform sample
    for (int i = 0; i < k; ++i) std::swap(ids[i], ids[i + rng() % (n - i)]);
    std::vector<PointId> q(ids.begin(), ids.begin() + k);
    size_t m = 0;
    auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < repeat; ++r) {
      auto et = extract_subtree(s.tree, s.nav, q);
      m = build_pseudospanner(et, s.tree.config).edges.size();
    }
    auto stop = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double, std::micro>(stop - start).count() / repeat);
    edges += static_cast<double>(m);
  }
  QueryTiming out;
  out.k = k;
  out.trials = trials;
  if (times.empty()) return out;
  std::sort(times.begin(), times.end());
  out.median_us = times[times.size() / 2];
  out.min_us = times.front();
  out.max_us = times.back();
  out.mean_spanner_edges = edges / trials;
  return out;
}

}  // namespace dmot
