#pragma once

#include <cstdint>

namespace beamloop {

// SplitMix64 (Steele, Lea, Flood). Output k of the stream seeded with `seed`
// is mix(seed + (k + 1) * 0x9e3779b97f4a7c15), so any draw can be computed
// directly from its counter.
inline constexpr std::uint64_t kSplitMixGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t counter_draw(std::uint64_t seed, std::uint64_t counter) noexcept {
  return splitmix64_mix(seed + (counter + 1) * kSplitMixGamma);
}

// Maps 64 random bits to the open interval (0, 1).
constexpr double to_unit_open(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kSplitMixGamma;
    return splitmix64_mix(state_);
  }
  constexpr double uniform() noexcept { return to_unit_open(next()); }

 private:
  std::uint64_t state_;
};

}  // namespace beamloop
