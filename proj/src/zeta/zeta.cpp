#include "zm/zeta.hpp"

#include "zm/common.hpp"
#include "zm/simd.hpp"

#include <cmath>
#include <string>

namespace zm {

namespace {

#include "zeta/rs_coefficients.inc"

constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

double reduce_two_pi(long double x) {
  long double r = std::fmod(x, kTwoPiL);
  if (r < 0) r += kTwoPiL;
  return static_cast<double>(r);
}

// Stirling series for theta; the first omitted term is O(t^-11), < 1e-13 at t = 10.
long double theta_stirling(long double t) {
  const long double u = 1.0L / t;
  const long double u2 = u * u;
  const long double tail =
      u * (1.0L / 48 + u2 * (7.0L / 5760 + u2 * (31.0L / 80640 + u2 * (127.0L / 430080 + u2 * (511.0L / 1216512)))));
  const long double pi = kTwoPiL / 2;
  return t / 2 * std::log(t / kTwoPiL) - t / 2 - pi / 8 + tail;
}

// sum_k C_k(p) a^{-k}; orders whose largest possible contribution is below
// 1e-18 are skipped.
double rs_remainder(double a, double p) {
  const double w = p - 0.5;
  const double w2 = w * w;
  const double inv_a = 1.0 / a;
  double scale = 1.0;
  double total = 0.0;
  for (int k = 0; k < kRsOrders; ++k) {
    if (kRsNorm[k] * scale < 1e-18) break;
    const double* c = kRsCoeffs[k];
    double v = 0.0;
    for (int j = kRsTerms[k] - 1; j >= 0; --j) v = std::fma(v, w2, c[j]);
    if (k & 1) v *= w;
    total += v * scale;
    scale *= inv_a;
  }
  return total;
}

struct RsValue {
  double z;      // Hardy function
  double theta;  // reduced theta
};

RsValue rs_eval(double t) {
  // t > 0 here
  const double theta = reduce_two_pi(theta_stirling(t));
  const double a = std::sqrt(t / kTwoPi);
  const double n_floor = std::floor(a);
  const auto n = static_cast<std::size_t>(n_floor);
  const double p = a - n_floor;
  const double main = 2.0 * simd::rs_main_sum(t, std::cos(theta), std::sin(theta), n);
  const double sign = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}
  return {main + sign * rs_remainder(a, p) / std::sqrt(a), theta};
}

ZetaPoint from_hardy(double t, double z, double theta) {
  // zeta = Z e^{-i theta}
  ZetaPoint pt;
  pt.t = t;
  pt.re = z * std::cos(theta);
  pt.im = -z * std::sin(theta);
  pt.abs2 = z * z;
  return pt;
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  require(z.real() > 0, "log_gamma needs Re z > 0");
  // shift to |z| >= 10, then Stirling with eight Bernoulli terms
  std::complex<double> shift = 0.0;
  while (std::abs(z) < 10.0) {
    shift += std::log(z);
    z += 1.0;
  }
  static constexpr double kB[] = {1.0 / 12,        -1.0 / 360,      1.0 / 1260,  -1.0 / 1680,
                                  1.0 / 1188,      -691.0 / 360360, 1.0 / 156,   -3617.0 / 122400};
  const std::complex<double> inv = 1.0 / z;
  const std::complex<double> inv2 = inv * inv;
  std::complex<double> series = 0.0;
  for (int k = 7; k >= 0; --k) series = series * inv2 + kB[k];
  series *= inv;
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(kTwoPi) + series - shift;
}

double rs_theta(double t) {
  const double at = std::abs(t);
  long double th;
  if (at >= kRsMinHeight) {
    th = theta_stirling(at);
  } else {
    th = std::imag(log_gamma({0.25, at / 2})) - at / 2 * std::log(kPi);
  }
  return reduce_two_pi(t < 0 ? -th : th);
}

double hardy_z(double t) {
  const double at = std::abs(t);
  if (at >= kRsMinHeight) return rs_eval(at).z;
  const ZetaPoint p = zeta_em(at);
  const double th = rs_theta(at);
  return std::cos(th) * p.re - std::sin(th) * p.im;
}

ZetaPoint zeta_rs(double t) {
  if (!(std::abs(t) >= kRsMinHeight))
    throw ValidationError("zeta_rs needs |t| >= 10 (got " + std::to_string(t) + "); use zeta_em below that");
  const RsValue v = rs_eval(std::abs(t));
  ZetaPoint pt = from_hardy(std::abs(t), v.z, v.theta);
  if (t < 0) {
    pt.t = t;
    pt.im = -pt.im;
  }
  return pt;
}

ZetaPoint zeta(double t) { return std::abs(t) >= kRsMinHeight ? zeta_rs(t) : zeta_em(t); }

double abs_zeta_pow(double t, int k) {
  require(k >= 1, "abs_zeta_pow needs k >= 1");
  const double at = std::abs(t);
  const double a2 = at >= kRsMinHeight ? [&] { const double z = rs_eval(at).z; return z * z; }()
                                       : zeta_em(at).abs2;
  double r = a2;
  for (int i = 1; i < k; ++i) r *= a2;
  return r;
}

}  // namespace zm
