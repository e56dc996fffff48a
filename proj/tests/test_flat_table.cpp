#include <random>
#include <unordered_map>

#include "doctest.h"
#include "dmot/flat_table.hpp"

using namespace dmot;

TEST_CASE("flat table equals a map oracle") {
  std::mt19937_64 rng(3);
  for (uint64_t seed : {1ull, 0x9e3779b97f4a7c15ULL}) {
    FlatTable t(seed);
    t.reset(10);  // grows past the reserved size
    std::unordered_map<uint64_t, int32_t> want;
    for (int i = 0; i < 20000; ++i) {
      int32_t a = static_cast<int32_t>(rng() % 500), b = static_cast<int32_t>(rng() % 500);
      uint64_t key = FlatTable::pack(a, b);
      int32_t v = static_cast<int32_t>(rng() % 1000);
      bool fresh = want.emplace(key, v).second;
      REQUIRE(t.insert(key, v) == fresh);
      uint64_t probe = FlatTable::pack(static_cast<int32_t>(rng() % 500), static_cast<int32_t>(rng() % 500));
      const int32_t* got = t.find(probe);
      auto it = want.find(probe);
      REQUIRE((got != nullptr) == (it != want.end()));
      if (got) REQUIRE(*got == it->second);
    }
    CHECK(t.size() == want.size());
  }
  FlatTable empty;
  CHECK(empty.find(FlatTable::pack(1, 2)) == nullptr);
  CHECK(FlatTable::pack(1, 2) != FlatTable::pack(2, 1));
}
