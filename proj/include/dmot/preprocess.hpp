#pragma once

// Preprocessing entry point: metric in, query-phase structure out.

#include <memory>
#include <optional>
#include <vector>

#include "dmot/metric.hpp"
#include "dmot/structure.hpp"

namespace dmot {

struct PreprocessOptions {
  PartitionConfig config;
  uint64_t hash_seed = 0x9e3779b97f4a7c15ULL;
  uint64_t rng_seed = 1;
  std::optional<std::vector<double>> opening_costs;  // builds the FL index when set
  double eps0 = 0.5;
};

std::unique_ptr<Structure> preprocess(const MetricSpace& ms, const PreprocessOptions& opt = {});

}  // namespace dmot
