#pragma once

#include <cmath>
#include <cstdint>

namespace rieszlab {

/// Deterministic 64-bit generator (splitmix64). Every randomized routine in
/// this library derives its stream from an explicit seed through one of these;
/// there is no global generator state, so results are reproducible run to run.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform();
  }

  /// Standard normal deviate via Box-Muller. Avoids the standard library
  /// distributions, whose output is implementation defined.
  double gaussian() noexcept {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

namespace detail {

/// Stable mixing of a base seed with a stream index, so that per-index streams
/// (sample k of a multiplier, trial i of a probe) are decorrelated and do not
/// depend on how many streams the caller draws in total.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return seed ^ (0xD1B54A32D192ED03ull * (index + 0x9E3779B97F4A7C15ull));
}

}  // namespace detail

}  // namespace rieszlab
