#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "dmot/common.hpp"

namespace dmot {

// Predecessor/successor set over [0, 2^bits). Bucket representatives (the
// minimum of each bucket) live in an x-fast trie of hashed prefixes; buckets
// are ordered sets holding between bits/2 and 2*bits keys (one bucket may be
// smaller when it is the only one).
class YFastTrie {
 public:
  explicit YFastTrie(int universe_bits = 32, uint64_t seed = 0x9e3779b97f4a7c15ULL);

  void insert(uint64_t key);
  void erase(uint64_t key);
  bool contains(uint64_t key) const;
  std::optional<uint64_t> predecessor(uint64_t q) const;
  std::optional<uint64_t> successor(uint64_t q) const;

  size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  int universe_bits() const { return bits_; }
  uint64_t seed() const { return hash_.seed; }
  std::vector<uint64_t> keys() const;
  size_t bucket_count() const { return buckets_.size(); }

  // Checks every structural invariant; returns an empty string when sound.
  std::string validate() const;

  static int bits_for(uint64_t max_key);

 private:
  struct XNode {
    uint64_t min = 0, max = 0;
    uint64_t prev = 0, next = 0;  // leaf level only
    bool has_prev = false, has_next = false;
  };
  uint64_t code(int level, uint64_t key) const {
    uint64_t prefix = level == 0 ? 0 : key >> (bits_ - level);
    return (uint64_t{1} << level) | prefix;
  }
  void check_key(uint64_t key) const;
  // Largest representative <= q.
  std::optional<uint64_t> rep_pred(uint64_t q) const;
  std::optional<uint64_t> rep_succ_strict(uint64_t rep) const;
  void x_insert(uint64_t rep);
  void x_erase(uint64_t rep);
  void rebalance(uint64_t rep);

  int bits_;
  SeededHash hash_;
  std::unordered_map<uint64_t, XNode, SeededHash> xnodes_;
  std::unordered_map<uint64_t, std::set<uint64_t>, SeededHash> buckets_;  // rep -> keys
  size_t size_ = 0;
};

}  // namespace dmot
