#include "zm/atkinson.hpp"

#include "zm/common.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace zm {

double mean_square_main_term(double T) { return T * std::log(T / kTwoPi) + (2.0 * kEulerGamma - 1.0) * T; }

double e_direct(double T, const QuadratureConfig& cfg) { return e_direct(T, cfg, MomentCache::shared()); }

double e_direct(double T, const QuadratureConfig& cfg, MomentCache& cache) {
  require(std::isfinite(T) && T >= 10, "e_direct needs T >= 10");
  require(cfg.tolerance > 0, "quadrature tolerance must be positive");
  const double integral = cache.integral(T, 1);
  const double err = cache.error_estimate(T, 1);
  if (!(err <= cfg.tolerance))
    throw ComputationError("quadrature of |zeta|^2 on [0, " + std::to_string(T) +
                           "] did not reach tolerance: estimated error " + std::to_string(err));
  return integral - mean_square_main_term(T);
}

namespace {

std::uint64_t last_index(double cutoff) { return cutoff < 1 ? 0 : static_cast<std::uint64_t>(std::floor(cutoff)); }

void require_table(const DivisorTable& dtab, std::uint64_t n) {
  if (n > dtab.limit())
    throw ValidationError("divisor table limit " + std::to_string(dtab.limit()) + " is below the cutoff " +
                          std::to_string(n));
}

}  // namespace

double sigma1(double T, double N, const DivisorTable& dtab, Summation mode) {
  require(std::isfinite(T) && T > 0, "sigma1 needs T > 0");
  const std::uint64_t last = last_index(N);
  require_table(dtab, last);
  CompensatedSum comp;
  double naive = 0.0;
  for (std::uint64_t n = 1; n <= last; ++n) {
    const double dn = static_cast<double>(n);
    double term = dtab[n] * std::pow(dn, -0.75) * atkinson_e(T, dn) * std::cos(atkinson_f(T, dn));
    if (n & 1) term = -term;
    if (mode == Summation::compensated)
      comp += term;
    else
      naive += term;
  }
  const double sum = mode == Summation::compensated ? comp.value() : naive;
  return std::sqrt(2.0) * std::pow(T / kTwoPi, 0.25) * sum;
}

double sigma2(double T, double Nprime, const DivisorTable& dtab) {
  require(std::isfinite(T) && T > 0, "sigma2 needs T > 0");
  const std::uint64_t last = last_index(Nprime);
  require_table(dtab, last);
  const long double TL = T;
  const long double two_pi = 6.283185307179586476925286766559005768L;
  CompensatedSum sum;
  for (std::uint64_t n = 1; n <= last; ++n) {
    const long double ratio = TL / (two_pi * static_cast<long double>(n));
    if (!(ratio > 1.0L))
      throw ValidationError("sigma2: T/(2 pi n) <= 1 at n = " + std::to_string(n) +
                            "; N' must stay below T/(2 pi)");
    const long double lg = std::log(ratio);
    const long double phase = TL * lg - TL + two_pi / 8;
    sum += static_cast<double>(dtab[n] / std::sqrt(static_cast<long double>(n)) / lg * std::cos(phase));
  }
  return -2.0 * sum.value();
}

AtkinsonParams AtkinsonParams::make(double T, double N) {
  require(std::isfinite(T) && T >= 10, "Atkinson's formula needs T >= 10");
  require(std::isfinite(N) && N >= kA * T && N <= kAprime * T,
          "N must lie in [T/2, 2T] (got N = " + std::to_string(N) + ", T = " + std::to_string(T) + ")");
  return {T, N, atkinson_nprime(T, N)};
}

const std::vector<std::string>& ETRecord::columns() {
  static const std::vector<std::string> cols{"T", "e_direct", "e_atkinson", "sigma1", "sigma2", "residual"};
  return cols;
}

ExperimentRecord ETRecord::to_record() const {
  ExperimentRecord r;
  r.set("T", T).set("e_direct", e_direct).set("e_atkinson", e_atkinson);
  r.set("sigma1", sigma1).set("sigma2", sigma2).set("residual", residual);
  return r;
}

std::uint64_t atkinson_table_limit(double N) { return std::max<std::uint64_t>(1, last_index(N)); }

ETRecord e_atkinson(double T, double N, const DivisorTable& dtab, const QuadratureConfig& cfg) {
  if (N <= 0) N = T;
  const AtkinsonParams p = AtkinsonParams::make(T, N);
  ETRecord r;
  r.T = T;
  r.sigma1 = sigma1(T, p.N, dtab);
  r.sigma2 = sigma2(T, p.Nprime, dtab);
  r.e_atkinson = r.sigma1 + r.sigma2;
  r.e_direct = e_direct(T, cfg);
  r.residual = r.e_direct - r.e_atkinson;
  return r;
}

std::vector<ETRecord> et_sweep(std::span<const double> heights, const QuadratureConfig& cfg) {
  require(!heights.empty(), "height grid is empty");
  double top = 0;
  for (double T : heights) {
    AtkinsonParams::make(T, T);
    top = std::max(top, T);
  }
  const DivisorTable dtab(atkinson_table_limit(top));
  std::vector<ETRecord> out;
  out.reserve(heights.size());
  for (double T : heights) out.push_back(e_atkinson(T, T, dtab, cfg));
  return out;
}

}  // namespace zm
