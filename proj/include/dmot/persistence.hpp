#pragma once

// Versioned binary file for the query-phase structure. Layout:
//   "DMOT" | u16 version | u16 flags | u64 payload length | payload | u64 FNV-1a(payload)
// Integers are little-endian fixed width, reals binary64. Every dictionary is
// stored as a sorted list and rebuilt on load with the stored hash seed.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dmot/structure.hpp"

namespace dmot {

constexpr uint16_t kFormatVersion = 1;
constexpr uint16_t kFlagFLIndex = 1;

uint64_t fnv1a64(const uint8_t* data, size_t size);

std::vector<uint8_t> serialize(const Structure& s);
std::unique_ptr<Structure> deserialize(const std::vector<uint8_t>& bytes);

void save(const Structure& s, const std::string& path);
std::unique_ptr<Structure> load(const std::string& path);

// Number of stored integer/real entries (the quantity that scales as n log n).
size_t serialized_entry_count(const Structure& s);

}  // namespace dmot
