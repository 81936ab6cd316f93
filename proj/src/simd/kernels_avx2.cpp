// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include "simd/tables.hpp"
#include "zm/common.hpp"
#include "zm/simd.hpp"

#include <immintrin.h>

#include <cmath>

namespace zm::simd::avx2 {

namespace {

// Cephes minimax coefficients, |x| <= pi/4.
constexpr double kSin[] = {1.58962301576546568060e-10, -2.50507477628578072866e-8,
                           2.75573136213857245213e-6,  -1.98412698295895385996e-4,
                           8.33333333332211858878e-3,  -1.66666666666666307295e-1};
constexpr double kCos[] = {-1.13585365213876817300e-11, 2.08757008419747316778e-9,
                           -2.75573141792967388112e-7,  2.48015872888517045348e-5,
                           -1.38888888888730564116e-3,  4.16666666666665929218e-2};

inline __m256d poly6(__m256d z, const double* c) {
  __m256d p = _mm256_set1_pd(c[0]);
  for (int i = 1; i < 6; ++i) p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(c[i]));
  return p;
}

// Four terms w * cos(theta - t log n).
inline __m256d terms4(__m256d t, __m256d ct, __m256d st, __m256d w, __m256d lhi, __m256d llo) {
  const __m256d p_hi = _mm256_mul_pd(t, lhi);
  const __m256d p_lo = _mm256_fmadd_pd(t, llo, _mm256_fmsub_pd(t, lhi, p_hi));
  const __m256d q = _mm256_round_pd(_mm256_mul_pd(p_hi, _mm256_set1_pd(detail::kTwoOverPi)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(q, _mm256_set1_pd(detail::kPio2Hi), p_hi);
  r = _mm256_fnmadd_pd(q, _mm256_set1_pd(detail::kPio2Mid), r);
  r = _mm256_fnmadd_pd(q, _mm256_set1_pd(detail::kPio2Lo), r);
  r = _mm256_add_pd(r, p_lo);

  const __m256d z = _mm256_mul_pd(r, r);
  const __m256d s = _mm256_fmadd_pd(_mm256_mul_pd(r, z), poly6(z, kSin), r);
  const __m256d c = _mm256_fmadd_pd(_mm256_mul_pd(z, z), poly6(z, kCos),
                                    _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, _mm256_set1_pd(1.0)));

  // q can exceed int32 range for large t; only q mod 4 matters
  const __m256d q4 = _mm256_fnmadd_pd(_mm256_floor_pd(_mm256_mul_pd(q, _mm256_set1_pd(0.25))),
                                      _mm256_set1_pd(4.0), q);
  const __m256i quad = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(q4));
  const __m256i one = _mm256_set1_epi64x(1), two = _mm256_set1_epi64x(2);
  const __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(quad, one), one));
  const __m256d sin_neg = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(quad, two), two));
  const __m256d cos_neg = _mm256_castsi256_pd(
      _mm256_cmpeq_epi64(_mm256_and_si256(_mm256_add_epi64(quad, one), two), two));
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d sp = _mm256_blendv_pd(s, c, swap);
  __m256d cp = _mm256_blendv_pd(c, s, swap);
  sp = _mm256_xor_pd(sp, _mm256_and_pd(sin_neg, sign));
  cp = _mm256_xor_pd(cp, _mm256_and_pd(cos_neg, sign));
  return _mm256_mul_pd(w, _mm256_fmadd_pd(ct, cp, _mm256_mul_pd(st, sp)));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double rs_main_sum(double t, double cos_theta, double sin_theta, std::size_t count) {
  const auto& tab = detail::rs_tables();
  const std::size_t tabulated = std::min(count, detail::kTableSize);
  const __m256d vt = _mm256_set1_pd(t), vc = _mm256_set1_pd(cos_theta),
                vs = _mm256_set1_pd(sin_theta);
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= tabulated; i += 8) {
    acc0 = _mm256_add_pd(acc0, terms4(vt, vc, vs, _mm256_load_pd(tab.inv_sqrt + i),
                                      _mm256_load_pd(tab.log_hi + i), _mm256_load_pd(tab.log_lo + i)));
    acc1 = _mm256_add_pd(acc1, terms4(vt, vc, vs, _mm256_load_pd(tab.inv_sqrt + i + 4),
                                      _mm256_load_pd(tab.log_hi + i + 4),
                                      _mm256_load_pd(tab.log_lo + i + 4)));
  }
  for (; i + 4 <= tabulated; i += 4)
    acc0 = _mm256_add_pd(acc0, terms4(vt, vc, vs, _mm256_load_pd(tab.inv_sqrt + i),
                                      _mm256_load_pd(tab.log_hi + i), _mm256_load_pd(tab.log_lo + i)));
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  // Short tail and n beyond the table go through the reference path.
  if (i < count) acc += detail::rs_sum_range(t, cos_theta, sin_theta, i + 1, count);
  return acc;
}

double weighted_sum(std::span<const double> w, std::span<const double> f) {
  require(w.size() == f.size(), "weighted_sum: length mismatch");
  const std::size_t n = w.size();
  __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(w.data() + i), _mm256_loadu_pd(f.data() + i), a0);
    a1 = _mm256_fmadd_pd(_mm256_loadu_pd(w.data() + i + 4), _mm256_loadu_pd(f.data() + i + 4), a1);
  }
  double acc = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) acc += w[i] * f[i];
  return acc;
}

}  // namespace zm::simd::avx2
