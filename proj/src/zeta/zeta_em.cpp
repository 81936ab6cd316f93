#include "zm/common.hpp"
#include "zm/zeta.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace zm {

namespace {
constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

// B_{2k}/(2k)! = (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}, index k.
const std::vector<long double>& bernoulli_ratios() {
  static const std::vector<long double> table = [] {
    std::vector<long double> b(128, 0.0L);
    for (int k = 1; k < 128; ++k) {
      const long double v = 2.0L * std::riemann_zetal(2.0L * k) / std::pow(kTwoPiL, 2.0L * k);
      b[k] = (k % 2 == 1) ? v : -v;
    }
    return b;
  }();
  return table;
}

}  // namespace

// zeta(s) = sum_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//         + sum_{k=1}^{M} B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1} + R_M,
// |R_M| <= |s+2M+1| / (sigma+2M+1) * |T_{M+1}|.
// N is chosen with |t| / (2 pi N) <= 1/4 so the corrections decay like 16^-k.
EmEvaluation zeta_em_bounded(double t, int terms) {
  require(terms >= 1, "zeta_em needs at least one correction term");
  require(std::isfinite(t), "zeta_em needs finite t");
  using cld = std::complex<long double>;
  const long double at = std::abs(static_cast<long double>(t));
  const long long n_cut = 16 + static_cast<long long>(std::ceil(0.64L * at));
  const cld s(0.5L, at);

  // t log n is split exactly into double pieces and reduced mod 2 pi in
  // long double; the trig itself runs in double.
  const double td = static_cast<double>(at);
  long double re = 0.0L, im = 0.0L;
  for (long long n = n_cut - 1; n >= 1; --n) {
    const long double ln = std::log(static_cast<long double>(n));
    const double ln_hi = static_cast<double>(ln);
    const double ln_lo = static_cast<double>(ln - ln_hi);
    const double ph = td * ln_hi;
    const double pl = std::fma(td, ln_hi, -ph) + td * ln_lo;
    const long double q = std::nearbyint(static_cast<long double>(ph) / kTwoPiL);
    const double r = static_cast<double>((static_cast<long double>(ph) - q * kTwoPiL) + pl);
    const double mag = 1.0 / std::sqrt(static_cast<double>(n));
    re += mag * std::cos(r);
    im -= mag * std::sin(r);
  }
  cld sum(re, im);

  const long double big_n = static_cast<long double>(n_cut);
  const long double ln_n = std::log(big_n);
  const cld n_pow_s = std::polar(1.0L / std::sqrt(big_n), -at * ln_n);  // N^{-s}
  sum += n_pow_s * big_n / (s - 1.0L) + n_pow_s / 2.0L;

  const auto& bern_table = bernoulli_ratios();
  require(terms + 1 < static_cast<int>(bern_table.size()), "zeta_em term count too large");
  const auto bern = [&](int k) { return bern_table[k]; };

  cld poch = s;                       // s(s+1)...(s+2k-2)
  cld n_pow = n_pow_s / big_n;        // N^{-s-2k+1}
  const long double inv_n2 = 1.0L / (big_n * big_n);
  for (int k = 1; k <= terms; ++k) {
    sum += bern(k) * poch * n_pow;
    poch *= (s + static_cast<long double>(2 * k - 1)) * (s + static_cast<long double>(2 * k));
    n_pow *= inv_n2;
  }
  const long double next = std::abs(bern(terms + 1) * poch * n_pow);
  const long double m2 = 2.0L * terms + 1.0L;
  const long double bound = std::abs(s + m2) / (0.5L + m2) * next;

  EmEvaluation out;
  out.point.t = t;
  out.point.re = static_cast<double>(sum.real());
  out.point.im = static_cast<double>(t < 0 ? -sum.imag() : sum.imag());
  out.point.abs2 = static_cast<double>(std::norm(sum));
  out.error_bound = static_cast<double>(bound);
  return out;
}

ZetaPoint zeta_em(double t, int terms) { return zeta_em_bounded(t, terms).point; }

}  // namespace zm
