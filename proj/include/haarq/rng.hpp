#pragma once

#include <cstdint>

namespace haarq {

// SplitMix64 finalizer. Fixed bit-exactly so seeded artifacts reproduce
// across builds and platforms.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seeded stream; next() equals mix64 of the pre-advance state.
class Rng {
 public:
  explicit constexpr Rng(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    const std::uint64_t r = mix64(state_);
    state_ += 0x9E3779B97F4A7C15ULL;
    return r;
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, bound); bound >= 1.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  // Uniform over [0, 2^bits); bits in 1..64.
  std::uint64_t next_bits(int bits) noexcept {
    const std::uint64_t v = next();
    return bits >= 64 ? v : (v & ((std::uint64_t{1} << bits) - 1));
  }

  int next_bit() noexcept { return static_cast<int>(next() & 1); }

 private:
  std::uint64_t state_;
};

}  // namespace haarq
