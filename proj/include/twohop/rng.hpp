#pragma once
// Deterministic randomness utilities. Every randomized component owns a
// SplitMix64 stream derived from a master seed through a fixed splitting
// rule, so a run is replayable bit-exactly from (config, seed).

#include <cstdint>
#include <vector>

namespace twohop {

// 64-bit counter-based generator (splitmix64).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform value in [0, bound); bound > 0. Rejection keeps it unbiased.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % bound;
  }

  // Uniform double in [0, 1).
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Fixed splitting rule: independent child seed for component `index` of a
// master seed. Same (master, index) always yields the same child.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 mix(master ^ (0xd1b54a32d192ed03ULL * (index + 1)));
  mix.next();
  return mix.next();
}

// Uniform k-subset of {0, ..., n-1} without replacement (Floyd's method),
// appended to `out`. Expected O(k) work; k must be <= n. The linear duplicate
// scan is fine for the small k used in light-update selection.
inline void sample_index_subset(SplitMix64& rng, std::uint64_t n, std::uint64_t k,
                                std::vector<std::uint32_t>& out) {
  const std::size_t base = out.size();
  for (std::uint64_t j = n - k; j < n; ++j) {
    std::uint64_t t = rng.next_below(j + 1);
    bool seen = false;
    for (std::size_t i = base; i < out.size(); ++i) {
      if (out[i] == t) {
        seen = true;
        break;
      }
    }
    out.push_back(static_cast<std::uint32_t>(seen ? j : t));
  }
}

}  // namespace twohop
