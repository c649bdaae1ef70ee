#ifndef SINAI_RNG_HPP
#define SINAI_RNG_HPP

#include <cmath>
#include <cstdint>
#include <limits>

namespace sinai {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden64 = 0x9e3779b97f4a7c15ULL;

// Counter-based seed derivation. Injective in `index` for any fixed master
// seed (odd multiplier, bijective finalizer), so per-trial streams never
// collide and results are independent of scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master + kGolden64 * (index + 1));
}

// Fast 64-bit generator (SplitMix64 sequence). Satisfies
// std::uniform_random_bit_generator.
struct SplitMix64 {
  using result_type = std::uint64_t;
  std::uint64_t state = 0;

  SplitMix64() = default;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    state += kGolden64;
    return mix64(state);
  }
};

// Uniform double in [0, 1), 53 random bits.
inline double uniform01(SplitMix64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Standard normals via Box-Muller. Consumes exactly two uniforms per pair,
// so the draw count (and hence the stream position) is deterministic.
struct GaussianStream {
  SplitMix64 rng;
  double spare = 0.0;
  bool has_spare = false;

  GaussianStream() = default;
  explicit GaussianStream(std::uint64_t seed) : rng(seed) {}

  double operator()() {
    if (has_spare) {
      has_spare = false;
      return spare;
    }
    const double u1 = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;  // (0,1]
    const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;       // [0,1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586477 * u2;
    spare = r * std::sin(a);
    has_spare = true;
    return r * std::cos(a);
  }
};

}  // namespace sinai

#endif  // SINAI_RNG_HPP
