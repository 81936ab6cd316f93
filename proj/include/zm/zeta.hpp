#pragma once
// zeta(1/2 + it): Riemann-Siegel for |t| >= 10, Euler-Maclaurin as the
// slow reference and for small heights.

#include <complex>

namespace zm {

struct ZetaPoint {
  double t = 0.0;
  double re = 0.0;
  double im = 0.0;
  double abs2 = 0.0;  // re^2 + im^2
};

/// Below this height zeta() and abs_zeta_pow() switch to Euler-Maclaurin.
inline constexpr double kRsMinHeight = 10.0;
inline constexpr int kEmDefaultTerms = 20;

/// Riemann-Siegel theta, reduced to [0, 2 pi). Odd in t.
double rs_theta(double t);

/// Hardy's function Z(t) = e^{i theta(t)} zeta(1/2 + it), real and even in t.
double hardy_z(double t);

/// Riemann-Siegel with 12 correction orders (error ~1e-8 at t = 10, falling
/// fast with t). |t| < 10 raises ValidationError; negative t by conjugation.
ZetaPoint zeta_rs(double t);

struct EmEvaluation {
  ZetaPoint point;
  double error_bound = 0.0;  // rigorous bound on the truncated remainder
};

/// Euler-Maclaurin with `terms` Bernoulli corrections, extended precision in
/// the direct sum. Any real t (negative by conjugation).
EmEvaluation zeta_em_bounded(double t, int terms = kEmDefaultTerms);
ZetaPoint zeta_em(double t, int terms = kEmDefaultTerms);

/// zeta_rs above kRsMinHeight, zeta_em below.
ZetaPoint zeta(double t);

/// |zeta(1/2 + it)|^{2k}, k >= 1.
double abs_zeta_pow(double t, int k);

/// log Gamma(z) on the principal branch continued from the positive axis (Re z > 0).
std::complex<double> log_gamma(std::complex<double> z);

}  // namespace zm
