// counter_rng.hpp
// Counter-based uniform generator, algorithm "splitmix64-counter", version 1.
//
//   key      = mix(seed ^ mix(stream + 0x9E3779B97F4A7C15))
//   word(k)  = mix(key + (k + 1) * 0x9E3779B97F4A7C15)
//   uniform  = (word >> 11) * 2^-53                       in [0, 1)
// where mix is the SplitMix64 finalizer. Draw k depends only on
// (seed, stream, k), so any partition of the counter range reproduces the
// same sequence. Changing any constant here is a breaking change.

#pragma once

#include <cstdint>
#include <string_view>

namespace lglab {

inline constexpr std::string_view kRngAlgorithm = "splitmix64-counter";
inline constexpr int kRngVersion = 1;

class CounterRng {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(seed ^ mix(stream + kGamma))) {}

  constexpr std::uint64_t word(std::uint64_t counter) const {
    return mix(key_ + (counter + 1) * kGamma);
  }

  constexpr double uniform(std::uint64_t counter) const {
    return static_cast<double>(word(counter) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
};

}  // namespace lglab
