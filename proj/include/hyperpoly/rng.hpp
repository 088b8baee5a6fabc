#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace hyperpoly {

/// Deterministic random source.
///
/// Every randomized routine in the library takes an explicit Rng, so a run is
/// reproducible from its seed alone. The engine is std::mt19937_64; derived
/// draws (integer ranges, uniform/gaussian doubles) are implemented here
/// rather than with std::*_distribution, whose output is
/// implementation-defined and would break byte-identical golden files.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform integer in [lo, hi], by rejection sampling.
  std::int64_t int_range(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("int_range: empty range");
    const std::uint64_t span =
        static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next_u64());  // full range
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t r = next_u64();
    while (r >= limit) r = next_u64();
    return lo + static_cast<std::int64_t>(r % span);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal deviate (Box-Muller, pair cached).
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = unit();
    while (u1 == 0.0) u1 = unit();
    const double u2 = unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hyperpoly
