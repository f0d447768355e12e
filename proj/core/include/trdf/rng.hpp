#pragma once

#include <cmath>
#include <cstdint>

namespace trdf {

/// Splittable counter-style random stream.
///
/// Each stream is keyed by (seed, stream_id); distinct ids give statistically
/// independent sequences, so Monte Carlo workers can own substreams without
/// coordination. The generator is the SplittableRandom construction: a Weyl
/// counter passed through two 64-bit finalizing mixers. State is 16 bytes and
/// trivially copyable; draws are reproducible across platforms.
class RngStream {
public:
  RngStream() : RngStream(0, 0) {}

  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : state_(mix(seed ^ 0x8c2f'9d70'3c8f'0b6dULL)),
        gamma_(make_gamma(mix(stream_id ^ mix(seed + 0x9e37'79b9'7f4a'7c15ULL)))) {}

  std::uint64_t next_u64() {
    state_ += gamma_;
    return mix(state_);
  }

  /// Uniform on the open interval (0,1); never returns 0 or 1.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double exponential() { return -std::log(uniform()); }

  /// Standard normal via Box-Muller; the second value of each pair is cached.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58'476d'1ce4'e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d0'49bb'1331'11ebULL;
    z ^= z >> 31;
    return z;
  }

  // Gammas must be odd; sparse ones are re-mixed as in SplittableRandom.
  static std::uint64_t make_gamma(std::uint64_t z) {
    z |= 1ULL;
    const int pop = __builtin_popcountll(z ^ (z >> 1));
    if (pop < 24) z ^= 0xaaaa'aaaa'aaaa'aaaaULL;
    return z;
  }

  std::uint64_t state_;
  std::uint64_t gamma_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace trdf
