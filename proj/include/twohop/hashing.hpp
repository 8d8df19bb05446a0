#pragma once
// Tabulation hashing from 32-bit keys to 64-bit values. The four 256-entry
// tables are filled from a splitmix64 stream, so a hash function is fully
// determined by its seed and two functions with distinct seeds behave as
// independent mappings.

#include <array>
#include <cstdint>

#include "twohop/rng.hpp"

namespace twohop {

class TabulationHash {
 public:
  explicit TabulationHash(std::uint64_t seed) : seed_(seed) {
    SplitMix64 mix(seed);
    for (auto& table : tables_)
      for (auto& cell : table) cell = mix.next();
  }

  std::uint64_t operator()(std::uint32_t key) const {
    return tables_[0][key & 0xff] ^ tables_[1][(key >> 8) & 0xff] ^
           tables_[2][(key >> 16) & 0xff] ^ tables_[3][key >> 24];
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::array<std::array<std::uint64_t, 256>, 4> tables_;
};

}  // namespace twohop
