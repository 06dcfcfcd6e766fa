#pragma once

// Counter-based randomness. Every draw is a pure function of
// (master seed, trial, period, stream), so trials can run in any order on
// any thread and still reproduce bit for bit.

#include <cstdint>

namespace ksb::env {

struct Seed {
  std::uint64_t master = 0;
  std::uint64_t trial = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b) noexcept {
  return splitmix64(a ^ splitmix64(b + 0x632be59bd9b4e019ULL));
}

/// Key of one trial's random streams.
constexpr std::uint64_t trial_key(const Seed& seed) noexcept {
  return mix(splitmix64(seed.master), seed.trial);
}

/// Uniform double in [0, 1) with 53 random bits.
constexpr double uniform01(std::uint64_t key, std::uint64_t period, std::uint64_t stream) noexcept {
  const std::uint64_t bits = mix(mix(key, period), stream);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Seed for a policy's private generator, independent of the demand streams.
constexpr std::uint64_t policy_seed(const Seed& seed) noexcept {
  return mix(trial_key(seed), 0x706f6c6963790000ULL);
}

}  // namespace ksb::env
