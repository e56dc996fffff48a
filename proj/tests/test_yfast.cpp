#include <random>
#include <set>

#include "doctest.h"
#include "dmot/yfast.hpp"

using namespace dmot;

TEST_CASE("basic operations") {
  YFastTrie t(8);
  t.insert(5);
  CHECK(t.contains(5));
  t.insert(5);
  CHECK(t.size() == 1);
  t.erase(7);
  CHECK(t.size() == 1);
  t.erase(5);
  CHECK(t.empty());
  for (uint64_t k : {3, 7, 10}) t.insert(k);
  CHECK(*t.predecessor(8) == 7);
  CHECK(!t.predecessor(2));
  CHECK(*t.successor(8) == 10);
  CHECK(*t.successor(3) == 3);
  CHECK(!t.successor(11));
  CHECK(t.validate().empty());
  CHECK_THROWS_AS(t.insert(256), Error);
}

static void random_script(int bits, int ops, uint64_t seed) {
  YFastTrie t(bits, seed);
  std::set<uint64_t> oracle;
  std::mt19937_64 rng(seed);
  uint64_t range = bits >= 20 ? 4096 : (uint64_t{1} << bits);
  uint64_t span = uint64_t{1} << bits;
  for (int i = 0; i < ops; ++i) {
    uint64_t key = rng() % span;
    if (bits >= 20) key = (rng() % range) * (span / range) + rng() % 3;
    key %= span;
    switch (rng() % 4) {
      case 0:
      case 1:
        t.insert(key);
        oracle.insert(key);
        break;
      case 2:
        t.erase(key);
        oracle.erase(key);
        break;
      default: {
        auto it = oracle.upper_bound(key);
        auto pred = it == oracle.begin() ? std::optional<uint64_t>() : *std::prev(it);
        auto jt = oracle.lower_bound(key);
        auto succ = jt == oracle.end() ? std::optional<uint64_t>() : *jt;
        REQUIRE(t.predecessor(key) == pred);
        REQUIRE(t.successor(key) == succ);
        REQUIRE(t.contains(key) == (oracle.count(key) == 1));
      }
    }
    REQUIRE(t.size() == oracle.size());
    if (i % 997 == 0) REQUIRE(t.validate() == "");
  }
  REQUIRE(t.validate() == "");
  auto keys = t.keys();
  REQUIRE(std::vector<uint64_t>(oracle.begin(), oracle.end()) == keys);
}

TEST_CASE("matches sorted-set oracle") {
  random_script(8, 20000, 1);
  random_script(12, 20000, 2);
  random_script(16, 20000, 3);
  random_script(24, 20000, 4);
  random_script(3, 2000, 5);
}

TEST_CASE("bulk inserts") {
  YFastTrie t(20, 9);
  std::set<uint64_t> oracle;
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10000; ++i) {
    uint64_t k = rng() % (1u << 20);
    t.insert(k);
    oracle.insert(k);
  }
  CHECK(t.keys() == std::vector<uint64_t>(oracle.begin(), oracle.end()));
  CHECK(t.validate() == "");
  CHECK(t.bucket_count() < oracle.size());
}
