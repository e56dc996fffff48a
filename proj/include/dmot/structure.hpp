#pragma once

// Query-phase handle: the compressed tree, its navigation index and the
// optional facility-location index. Holds no distance function.

#include <cstdint>
#include <optional>

#include "dmot/applications.hpp"
#include "dmot/hierarchy.hpp"
#include "dmot/path_nav.hpp"

namespace dmot {

struct Structure {
  CompressedTree tree;
  PathNav nav;
  std::optional<FLIndex> fl;
  uint64_t rng_seed = 1;  // seeds query-time randomness (dynamic MST roots)

  Structure() = default;
  Structure(const Structure&) = delete;
  Structure& operator=(const Structure&) = delete;
};

}  // namespace dmot
