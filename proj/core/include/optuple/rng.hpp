#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace optuple {

/// xoshiro256++ seeded through splitmix64. Fixed, named algorithms so that
/// seeded corpora are reproducible bit-for-bit across runs and platforms.
/// Every randomized operation in the library takes an explicit seed;
/// independent streams are derived from (seed, stream index).
class StableRng {
 public:
  explicit StableRng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& s : state_) s = splitmix64(x);
  }

  /// Stream derivation: mixes the index into the seed before expansion,
  /// so trial i's stream is independent of trial j's and of draw order.
  static StableRng stream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ULL * (index + 1));
    return StableRng(splitmix64(x) ^ index);
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

  /// Uniform in [0, 1) with 53 mantissa bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (fixed algorithm, no library
  /// distribution objects whose streams vary between implementations).
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  std::complex<double> complex_gaussian() {
    return {gaussian(), gaussian()};
  }

  /// Uniform on the disc of the given radius.
  std::complex<double> complex_in_disc(double radius) {
    for (;;) {
      const double re = uniform(-1.0, 1.0);
      const double im = uniform(-1.0, 1.0);
      if (re * re + im * im <= 1.0) return {radius * re, radius * im};
    }
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace optuple
