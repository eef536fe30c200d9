#pragma once

// Reproducible random streams. Each trial derives independent substreams from
// (master_seed, trial_index, purpose) through SplitMix64, then draws from a
// xoshiro256** engine. Distribution sampling is done here rather than through
// <random> distributions so draws are identical across standard libraries.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>

namespace antijam {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Purposes keep radar sampling, jammer sampling and channel noise decoupled,
/// so changing one consumer never shifts another's draws.
enum class StreamPurpose : std::uint64_t {
  Radar = 1,
  Jammer = 2,
  Theta = 3,
  Channel = 4,
  Test = 99,
};

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  static Rng substream(std::uint64_t master_seed, std::uint64_t trial,
                       StreamPurpose purpose = StreamPurpose::Radar) {
    std::uint64_t h = master_seed;
    std::uint64_t a = splitmix64(h);
    h ^= trial * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
    std::uint64_t b = splitmix64(h);
    h ^= static_cast<std::uint64_t>(purpose) * 0xa0761d6478bd642fULL;
    std::uint64_t c = splitmix64(h);
    return Rng(a ^ (b << 1) ^ (c << 2) ^ trial);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; the second variate is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  /// Circular complex Gaussian with E|z|^2 = power.
  std::complex<double> complex_normal(double power) {
    double s = std::sqrt(power / 2.0);
    double re = normal();
    double im = normal();
    return {s * re, s * im};
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> s_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace antijam
