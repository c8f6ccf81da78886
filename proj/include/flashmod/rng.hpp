#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace flashmod {

__extension__ typedef unsigned __int128 uint128;

// SplitMix64 finalizer. Used to derive independent per-trial seeds from a
// master seed so that trial i always sees the same stream, no matter which
// thread runs it or in which order.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t split_seed(std::uint64_t master_seed, std::uint64_t index) {
  return mix64(mix64(master_seed) + 0x9e3779b97f4a7c15ULL * (index + 1));
}

// Thin wrapper over mt19937_64 with platform-independent bounded draws
// (std::uniform_int_distribution is implementation-defined).
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  // Uniform in [0, bound). Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) {
    uint128 wide = static_cast<uint128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(wide);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        wide = static_cast<uint128>(engine_()) * bound;
        low = static_cast<std::uint64_t>(wide);
      }
    }
    return static_cast<std::uint64_t>(wide >> 64);
  }

  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace flashmod
