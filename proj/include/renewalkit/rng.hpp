#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace renewalkit {

/// Identifier written into every result so runs can be audited.
inline constexpr const char* kRngAlgorithm = "xoshiro256**";

/// How (seed, stream) pairs are turned into generator state.
inline constexpr const char* kStreamDerivation =
    "key = splitmix64_mix(seed ^ splitmix64_mix(stream ^ 0xD1B54A32D192ED03)); "
    "state[0..3] = four successive splitmix64 outputs started at key";

/// SplitMix64 finalizer (Stafford variant 13).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// A seeded xoshiro256** stream. Identical (seed, stream) pairs produce
/// bit-identical sequences on every platform. Streams with distinct indices
/// under one seed are treated as independent.
///
/// Single owner: give each thread its own stream index.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream) noexcept
      : seed_(seed), stream_(stream) {
    std::uint64_t z = splitmix64_mix(seed ^ splitmix64_mix(stream ^ 0xD1B54A32D192ED03ULL));
    for (auto& word : state_) {
      z += 0x9E3779B97F4A7C15ULL;
      word = splitmix64_mix(z);
    }
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }
  std::uint64_t draws() const noexcept { return draws_; }

  /// Raw 64-bit output.
  std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    ++draws_;
    return result;
  }

  /// Uniform on the open interval (0, 1): the top 53 bits, offset by half a
  /// grid step. Consumes exactly one raw draw.
  double uniform() noexcept {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  // UniformRandomBitGenerator interface, so <algorithm> helpers accept it.
  using result_type = std::uint64_t;
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() noexcept { return next(); }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t draws_ = 0;
};

}  // namespace renewalkit
