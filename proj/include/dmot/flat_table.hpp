#pragma once

// Open-addressing hash table from packed 64-bit keys to 32-bit values, with
// linear probing over one contiguous array. Used for the per-query lookups
// where node-based maps cost several cache misses each.

#include <cstdint>
#include <vector>

#include "dmot/common.hpp"

namespace dmot {

class FlatTable {
 public:
  explicit FlatTable(uint64_t seed = 0x9e3779b97f4a7c15ULL) : hash_{seed} {}

  static uint64_t pack(int32_t a, int32_t b) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) | static_cast<uint32_t>(b);
  }

  // Sizes the table for `n` keys; clears it.
  void reset(size_t n) {
    size_t cap = 4;
    while (cap < 2 * n) cap *= 2;
    slots_.assign(cap, Slot{kEmpty, 0});
    mask_ = cap - 1;
    size_ = 0;
  }

  // Keeps the existing value when the key is present; returns whether it inserted.
  bool insert(uint64_t key, int32_t value) {
    if (2 * (size_ + 1) > slots_.size()) grow();
    for (size_t i = hash_(key) & mask_;; i = (i + 1) & mask_) {
      if (slots_[i].key == key) return false;
      if (slots_[i].key == kEmpty) {
        slots_[i] = Slot{key, value};
        ++size_;
        return true;
      }
    }
  }

  const int32_t* find(uint64_t key) const {
    if (slots_.empty()) return nullptr;
    for (size_t i = hash_(key) & mask_;; i = (i + 1) & mask_) {
      if (slots_[i].key == key) return &slots_[i].value;
      if (slots_[i].key == kEmpty) return nullptr;
    }
  }

  size_t size() const { return size_; }

 private:
  static constexpr uint64_t kEmpty = ~0ULL;
  struct Slot {
    uint64_t key;
    int32_t value;
  };

  void grow() {
    std::vector<Slot> old = std::move(slots_);
    reset(old.empty() ? 4 : old.size());
    for (const auto& s : old)
      if (s.key != kEmpty) insert(s.key, s.value);
  }

  SeededHash hash_;
  std::vector<Slot> slots_;
  size_t mask_ = 0;
  size_t size_ = 0;
};

}  // namespace dmot
