#pragma once

#include <cstdint>

namespace ramsey {

// SplitMix64 (Vigna's fixed-increment variant of SplittableRandom).
// Used wherever a run must be reproducible from a single 64-bit seed;
// the digon-completion stream is defined in terms of this exact mixer.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace ramsey
