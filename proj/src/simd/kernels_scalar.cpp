#include "simd/tables.hpp"
#include "zm/common.hpp"
#include "zm/simd.hpp"

#include <cmath>

namespace zm::simd {

namespace {

double term(double t, double ct, double st, double w, double lhi, double llo) {
  const double p_hi = t * lhi;
  const double p_lo = std::fma(t, lhi, -p_hi) + t * llo;
  long long q = 0;
  const double r = detail::reduce_pio2(p_hi, p_lo, q);
  double s = std::sin(r), c = std::cos(r);
  switch (q & 3) {
    case 0: break;
    case 1: { const double tmp = s; s = c; c = -tmp; break; }
    case 2: s = -s; c = -c; break;
    default: { const double tmp = s; s = -c; c = tmp; break; }
  }
  // cos(theta - phi) = cos theta cos phi + sin theta sin phi
  return w * (ct * c + st * s);
}

}  // namespace

double detail::rs_sum_range(double t, double cos_theta, double sin_theta, std::size_t first,
                            std::size_t last) {
  const auto& tab = rs_tables();
  double acc = 0.0;
  for (std::size_t n = first; n <= last; ++n) {
    if (n <= kTableSize) {
      acc += term(t, cos_theta, sin_theta, tab.inv_sqrt[n - 1], tab.log_hi[n - 1], tab.log_lo[n - 1]);
    } else {
      const long double l = std::log(static_cast<long double>(n));
      const double lhi = static_cast<double>(l);
      acc += term(t, cos_theta, sin_theta, 1.0 / std::sqrt(static_cast<double>(n)), lhi,
                  static_cast<double>(l - lhi));
    }
  }
  return acc;
}

namespace scalar {

double rs_main_sum(double t, double cos_theta, double sin_theta, std::size_t count) {
  return detail::rs_sum_range(t, cos_theta, sin_theta, 1, count);
}

double weighted_sum(std::span<const double> w, std::span<const double> f) {
  require(w.size() == f.size(), "weighted_sum: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * f[i];
  return acc;
}

}  // namespace scalar
}  // namespace zm::simd
