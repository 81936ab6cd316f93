#pragma once
// Per-n constants for the Riemann-Siegel main sum, shared by all variants.

#include <cmath>
#include <cstddef>

namespace zm::simd::detail {

inline constexpr std::size_t kTableSize = 4096;

struct RsTables {
  // index n - 1 holds the value for n
  alignas(32) double inv_sqrt[kTableSize];
  alignas(32) double log_hi[kTableSize];
  alignas(32) double log_lo[kTableSize];

  RsTables() {
    for (std::size_t i = 0; i < kTableSize; ++i) {
      const long double n = static_cast<long double>(i + 1);
      const long double l = std::log(n);
      inv_sqrt[i] = static_cast<double>(1.0L / std::sqrt(n));
      log_hi[i] = static_cast<double>(l);
      log_lo[i] = static_cast<double>(l - static_cast<long double>(log_hi[i]));
    }
  }
};

inline const RsTables& rs_tables() {
  static const RsTables tables;
  return tables;
}

// pi/2 split for three-step Cody-Waite reduction with FMA.
inline constexpr double kPio2Hi = 1.5707963267948966;
inline constexpr double kPio2Mid = 6.123233995736766e-17;
inline constexpr double kPio2Lo = -1.4973849048591698e-33;
inline constexpr double kTwoOverPi = 0.6366197723675814;

// Remainder of (hi + lo) modulo pi/2, and the quadrant index.
inline double reduce_pio2(double hi, double lo, long long& quadrant) {
  const double q = std::nearbyint(hi * kTwoOverPi);
  double r = std::fma(-q, kPio2Hi, hi);
  r = std::fma(-q, kPio2Mid, r);
  r = std::fma(-q, kPio2Lo, r);
  quadrant = static_cast<long long>(q);
  return r + lo;
}

// Reference evaluation of the terms n = first..last (1-based, inclusive).
double rs_sum_range(double t, double cos_theta, double sin_theta, std::size_t first, std::size_t last);

}  // namespace zm::simd::detail
