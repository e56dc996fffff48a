#pragma once

// Query-time measurement on a loaded structure.

#include <cstdint>
#include <vector>

#include "dmot/structure.hpp"

namespace dmot {

struct QueryTiming {
  int k = 0;
  int trials = 0;
  double median_us = 0.0;  // extract + spanner, per query
  double min_us = 0.0;
  double max_us = 0.0;
  double mean_spanner_edges = 0.0;
};

// Each trial draws k distinct random points and times `repeat` runs of
// extraction followed by spanner construction.
QueryTiming time_queries(const Structure& s, int k, int trials, uint64_t seed, int repeat = 5);

}  // namespace dmot
