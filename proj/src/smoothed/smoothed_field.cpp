#include "zm/common.hpp"
#include "zm/smoothed.hpp"
#include "zm/zeta.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace zm {

namespace {

// FFTW's planner is not re-entrant.
std::mutex g_plan_mutex;

std::size_t fft_size(std::size_t n) {
  // smallest 2^a 3^b 5^c 7^d >= n
  std::size_t best = 1;
  while (best < n) best *= 2;
  for (std::size_t p7 = 1; p7 < best; p7 *= 7)
    for (std::size_t p5 = p7; p5 < best; p5 *= 5)
      for (std::size_t p3 = p5; p3 < best; p3 *= 3) {
        std::size_t v = p3;
        while (v < n) v *= 2;
        best = std::min(best, v);
      }
  return best;
}

// out[i] = sum_{j=0}^{2J} w[j] s[i + j], i = 0..s.size() - 2J - 1
std::vector<double> correlate(const std::vector<double>& s, const std::vector<double>& w) {
  const std::size_t m = w.size();
  const std::size_t n_out = s.size() - m + 1;
  std::vector<double> out(n_out, 0.0);
  if (m <= 64) {
    parallel_for(n_out, [&](std::size_t i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) acc += w[j] * s[i + j];
      out[i] = acc;
    });
    return out;
  }
  // w is symmetric, so correlation equals convolution shifted by m - 1
  const std::size_t P = fft_size(s.size() + m - 1);
  const std::size_t C = P / 2 + 1;
  double* a = fftw_alloc_real(P);
  double* b = fftw_alloc_real(P);
  fftw_complex* fa = fftw_alloc_complex(C);
  fftw_complex* fb = fftw_alloc_complex(C);
  fftw_plan pa, pb, inv;
  {
    std::lock_guard lock(g_plan_mutex);
    pa = fftw_plan_dft_r2c_1d(static_cast<int>(P), a, fa, FFTW_ESTIMATE);
    pb = fftw_plan_dft_r2c_1d(static_cast<int>(P), b, fb, FFTW_ESTIMATE);
    inv = fftw_plan_dft_c2r_1d(static_cast<int>(P), fa, a, FFTW_ESTIMATE);
  }
  std::fill(a, a + P, 0.0);
  std::fill(b, b + P, 0.0);
  std::copy(s.begin(), s.end(), a);
  std::copy(w.begin(), w.end(), b);
  fftw_execute(pa);
  fftw_execute(pb);
  for (std::size_t i = 0; i < C; ++i) {
    const double re = fa[i][0] * fb[i][0] - fa[i][1] * fb[i][1];
    const double im = fa[i][0] * fb[i][1] + fa[i][1] * fb[i][0];
    fa[i][0] = re;
    fa[i][1] = im;
  }
  fftw_execute(inv);
  const double scale = 1.0 / static_cast<double>(P);
  for (std::size_t i = 0; i < n_out; ++i) out[i] = a[i + m - 1] * scale;
  {
    std::lock_guard lock(g_plan_mutex);
    fftw_destroy_plan(pa);
    fftw_destroy_plan(pb);
    fftw_destroy_plan(inv);
  }
  fftw_free(a);
  fftw_free(b);
  fftw_free(fa);
  fftw_free(fb);
  return out;
}

}  // namespace

SmoothedField::SmoothedField(double lo, double hi, double G, int k, double max_step, const Abs2Function& abs2)
    : lo_(lo), hi_(hi), G_(G), k_(k) {
  require(std::isfinite(lo) && std::isfinite(hi) && lo >= 0 && hi > lo, "field needs 0 <= lo < hi");
  require(std::isfinite(G) && G >= 1, "field needs G >= 1");
  require(k >= 1 && k <= 4, "field needs k in {1, 2, 3, 4}");
  require(max_step > 0, "field step cap must be positive");
  const double W = window_half_width(G);
  const double h0 = std::min(max_step, quadrature_step(hi + W, k));
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / h0));
  h_ = (hi - lo) / static_cast<double>(n);
  const auto J = static_cast<std::size_t>(std::floor(W / h_));
  reflected_ = lo - static_cast<double>(J) * h_ < 0;

  std::vector<double> samples(n + 1 + 2 * J);
  parallel_for(samples.size(), [&](std::size_t i) {
    const double x = std::abs(lo + (static_cast<double>(i) - static_cast<double>(J)) * h_);
    if (abs2) {
      const double a = abs2(x);
      double p = a;
      for (int j = 1; j < k; ++j) p *= a;
      samples[i] = p;
    } else {
      samples[i] = abs_zeta_pow(x, k);
    }
  });
  std::vector<double> w(2 * J + 1);
  const double norm = h_ / (std::sqrt(kPi) * G);
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double u = (static_cast<double>(j) - static_cast<double>(J)) * h_;
    w[j] = norm * std::exp(-(u / G) * (u / G));
  }
  values_ = correlate(samples, w);
}

double SmoothedField::integral_of_power(int m) const {
  require(m >= 1, "power must be >= 1");
  CompensatedSum s;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    double v = std::pow(values_[i], m);
    if (i == 0 || i + 1 == values_.size()) v *= 0.5;
    s += v;
  }
  return s.value() * h_;
}

}  // namespace zm
