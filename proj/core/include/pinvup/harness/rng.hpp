#pragma once

#include <array>
#include <cstdint>

namespace pinvup::harness {

/// SplitMix64 step (Steele, Lea, Flood): state += 0x9E3779B97F4A7C15, then
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   z ^ (z >> 31)
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// xoshiro256** 1.0 (Blackman, Vigna). State is seeded with four successive
/// splitmix64 outputs of the seed; output is rotl(s1 * 5, 7) * 9.
///
/// Only integer arithmetic is involved, so a given seed produces the same
/// stream on every platform. Doubles use the top 53 bits.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed) noexcept;

  std::uint64_t next() noexcept;
  /// Uniform on [0, 1): (next() >> 11) · 2⁻⁵³.
  double uniform01() noexcept;
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }
  /// Uniform integer on [0, bound) by rejection; bound must be non-zero.
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::array<std::uint64_t, 4> s_{};
};

/// Seed for instance `id` of a corpus with base seed `seed`:
/// one splitmix64 output from state seed + (id + 1)·0x9E3779B97F4A7C15.
std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t id) noexcept;

}  // namespace pinvup::harness
