#pragma once

#include <cstdint>

namespace disorder {

// splitmix64 finalizer. Used both to seed the engine below and to derive
// named sub-streams from a master seed.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream split: sub_seed(master, tag, index) names one stream.
// Independent (tag, index) pairs give independent streams, and adding a new
// index never perturbs existing ones.
inline std::uint64_t sub_seed(std::uint64_t master, std::uint64_t tag,
                              std::uint64_t index) {
  return mix64(mix64(master ^ mix64(tag)) ^ mix64(index));
}

// Stream tags used across the library.
inline constexpr std::uint64_t kStreamSensor = 1;  // per-sensor path stream
inline constexpr std::uint64_t kStreamRep = 2;     // per-replication stream
inline constexpr std::uint64_t kStreamMisc = 3;    // everything else

// xoshiro256++ with splitmix64 state initialization. Chosen over the standard
// distributions to keep every draw bit-stable across compilers and standard
// library versions (byte-identical artifacts are part of the CLI contract).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t z = seed;
    for (auto& word : state_) {
      z += 0x9e3779b97f4a7c15ULL;
      std::uint64_t w = z;
      w = (w ^ (w >> 30)) * 0xbf58476d1ce4e5b9ULL;
      w = (w ^ (w >> 27)) * 0x94d049bb133111ebULL;
      word = w ^ (w >> 31);
    }
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t state_[4];
};

}  // namespace disorder
