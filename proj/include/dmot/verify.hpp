#pragma once

// Verification mode: checks a structure against the metric it was built from
// with the brute-force oracles.

#include <string>
#include <vector>

#include "dmot/metric.hpp"
#include "dmot/preprocess.hpp"

namespace dmot {

struct SuiteResult {
  std::string name;
  bool pass = true;
  long checked = 0;
  long violations = 0;
  std::string detail;
};

struct VerifyOptions {
  uint64_t seed = 1;
  int subsets = 50;         // random query sets for extraction and spanner suites
  int max_subset = 16;
  long max_pairs = 2000000; // pairwise suites sample beyond this many pairs
};

// `opt` must be the options the structure was built with: one suite rebuilds
// it and compares the serialized bytes.
std::vector<SuiteResult> verify_structure(const MetricSpace& ms, const Structure& s,
                                          const PreprocessOptions& opt, const VerifyOptions& vo = {});

}  // namespace dmot
