#pragma once

// Counter-based random streams.
//
// Every draw is a pure function of (seed, sample index, draw index): the
// counter is mixed through the SplitMix64 finalizer (Steele, Lea, Flood 2014).
// Samples can therefore be generated in any order or on any thread and still
// reproduce bit-for-bit.

#include <array>
#include <cmath>
#include <cstdint>

namespace stella::rng {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  constexpr explicit CounterRng(std::uint64_t seed) : key_(splitmix64_mix(seed ^ 0x5851f42d4c957f2dULL)) {}

  /// 64 random bits for draw `draw` of sample `index`.
  constexpr std::uint64_t bits(std::uint64_t index, std::uint32_t draw) const {
    const std::uint64_t stream = splitmix64_mix(key_ + index * kGoldenGamma);
    return splitmix64_mix(stream + (static_cast<std::uint64_t>(draw) + 1) * kGoldenGamma);
  }

  /// Uniform double in the open interval (0, 1), 53 random bits.
  constexpr double uniform_open(std::uint64_t index, std::uint32_t draw) const {
    return (static_cast<double>(bits(index, draw) >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
};

/// Uniform point on the 3-simplex (flat Dirichlet) from normalized exponential spacings.
inline std::array<double, 4> uniform_simplex(const CounterRng& rng, std::uint64_t index) {
  std::array<double, 4> e{};
  double sum = 0.0;
  for (std::uint32_t j = 0; j < 4; ++j) {
    e[j] = -std::log(rng.uniform_open(index, j));
    sum += e[j];
  }
  for (auto& v : e) v /= sum;
  return e;
}

}  // namespace stella::rng
