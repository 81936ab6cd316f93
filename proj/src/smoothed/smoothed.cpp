#include "zm/smoothed.hpp"

#include "zm/atkinson.hpp"
#include "zm/common.hpp"
#include "zm/simd.hpp"
#include "zm/spectral.hpp"
#include "zm/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace zm {

std::string_view method_name(SmoothedMethod m) {
  switch (m) {
    case SmoothedMethod::quadrature: return "quadrature";
    case SmoothedMethod::series29: return "series29";
    case SmoothedMethod::series28: return "series28";
    case SmoothedMethod::spectral: return "spectral";
  }
  return "?";
}

SmoothedMethod parse_method(std::string_view name) {
  for (auto m : {SmoothedMethod::quadrature, SmoothedMethod::series29, SmoothedMethod::series28,
                 SmoothedMethod::spectral})
    if (method_name(m) == name) return m;
  throw ValidationError("unknown method '" + std::string(name) +
                        "' (expected quadrature, series29, series28 or spectral)");
}

double window_half_width(double G) { return G * std::sqrt(std::log(1.0 / kWindowTolerance)); }

double quadrature_step(double t, int k) { return MomentCache::panel_width(std::abs(t)) / k; }

SmoothedMoment jk_quadrature(double t, double G, int k) { return jk_quadrature(t, G, k, Abs2Function{}); }

SmoothedMoment jk_quadrature(double t, double G, int k, const Abs2Function& abs2) {
  require(std::isfinite(t) && t >= 10, "jk_quadrature needs t >= 10");
  require(std::isfinite(G) && G >= 1, "jk_quadrature needs G >= 1");
  require(k >= 1 && k <= 4, "jk_quadrature needs k in {1, 2, 3, 4}");
  const double W = window_half_width(G);
  const double h = quadrature_step(t + W, k);
  const auto J = static_cast<std::size_t>(std::floor(W / h));
  const std::size_t n = 2 * J + 1;

  std::vector<double> w(n), f(n);
  const double norm = h / (std::sqrt(kPi) * G);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = (static_cast<double>(i) - static_cast<double>(J)) * h;
    w[i] = norm * std::exp(-(u / G) * (u / G));
  }
  parallel_for(n, [&](std::size_t i) {
    // |zeta(1/2 + it)| is even in t, so nodes below 0 reflect
    const double x = std::abs(t + (static_cast<double>(i) - static_cast<double>(J)) * h);
    if (abs2) {
      const double a = abs2(x);
      double p = a;
      for (int j = 1; j < k; ++j) p *= a;
      f[i] = p;
    } else {
      f[i] = abs_zeta_pow(x, k);
    }
  });

  SmoothedMoment r;
  r.k = k;
  r.t = t;
  r.G = G;
  r.method = SmoothedMethod::quadrature;
  r.value = simd::weighted_sum(w, f);
  r.reflected = t - static_cast<double>(J) * h < 0;
  return r;
}

std::int64_t series29_min_cutoff(double t, double G) {
  require(t > 1 && G > 0, "series29 cutoff needs t > 1 and G > 0");
  return static_cast<std::int64_t>(std::ceil(t / (G * G) * std::log(t)));
}

std::int64_t series28_cutoff(double t, double G) {
  require(t > 0 && G > 0, "series28 cutoff needs t > 0 and G > 0");
  // exp(-pi n G^2 / 2t) < 1e-16  <=>  n > 2t ln(1e16) / (pi G^2)
  return static_cast<std::int64_t>(std::floor(2.0 * t * std::log(1e16) / (kPi * G * G))) + 1;
}

SeriesTerm series29_term(double t, double G, std::int64_t n, std::uint32_t dn) {
  const double nd = static_cast<double>(n);
  const double a = t / (kTwoPi * nd);
  // (a + 1/4)^{1/2} - 1/2 without cancellation for small a
  const double x0 = a / (std::sqrt(a + 0.25) + 0.5);
  const double ash = arsinh(std::sqrt(kPi * nd / (2.0 * t)));
  double amp = dn / std::sqrt(nd) / std::sqrt(x0) * std::exp(-G * G * ash * ash);
  if (n & 1) amp = -amp;
  return {atkinson_f(t, nd), amp};
}

SeriesTerm series28_term(double t, double G, std::int64_t n, std::uint32_t dn) {
  const double nd = static_cast<double>(n);
  double amp = dn * std::pow(nd, -0.25) * std::exp(-kPi * nd * G * G / (2.0 * t));
  if (n & 1) amp = -amp;
  return {atkinson_f(t, nd), amp};
}

namespace {

void check_table(const DivisorTable& dtab, std::int64_t cutoff) {
  if (static_cast<std::uint64_t>(cutoff) > dtab.limit())
    throw ValidationError("cutoff " + std::to_string(cutoff) + " exceeds the divisor table limit " +
                          std::to_string(dtab.limit()));
}

}  // namespace

SmoothedMoment j1_series29(double t, double G, const DivisorTable& dtab, std::int64_t cutoff) {
  require(std::isfinite(t) && t > 1, "series29 needs t > 1");
  require(std::isfinite(G) && G > 0 && G <= t, "series29 needs 0 < G <= t");
  const std::int64_t rule = series29_min_cutoff(t, G);
  if (cutoff <= 0) cutoff = rule;
  require(cutoff >= rule, "series29 cutoff " + std::to_string(cutoff) + " is below t G^-2 log t = " +
                              std::to_string(rule));
  check_table(dtab, cutoff);
  CompensatedSum s;
  for (std::int64_t n = 1; n <= cutoff; ++n) {
    const SeriesTerm term = series29_term(t, G, n, dtab[n]);
    s += term.amplitude * std::sin(term.phase);
  }
  SmoothedMoment r;
  r.k = 1;
  r.t = t;
  r.G = G;
  // minus: this is the sign under which log(t/2pi) + 2 gamma + series tracks J_1
  r.value = -std::sqrt(2.0) * s.value();
  r.method = SmoothedMethod::series29;
  r.truncation = cutoff;
  return r;
}

SmoothedMoment j1_series28(double t, double G, const DivisorTable& dtab, std::int64_t cutoff) {
  require(std::isfinite(t) && t > 1 && std::isfinite(G), "series28 needs finite t > 1 and G");
  if (G < std::pow(t, 0.25) || G > t / std::log(t))
    throw ValidationError("series28 is valid for t^{1/4} <= G <= t / log t; got G = " + std::to_string(G) +
                          " at t = " + std::to_string(t));
  if (cutoff <= 0) cutoff = series28_cutoff(t, G);
  check_table(dtab, cutoff);
  CompensatedSum s;
  for (std::int64_t n = 1; n <= cutoff; ++n) {
    const SeriesTerm term = series28_term(t, G, n, dtab[n]);
    s += term.amplitude * std::sin(term.phase);
  }
  SmoothedMoment r;
  r.k = 1;
  r.t = t;
  r.G = G;
  r.value = -std::pow(2.0, 0.75) * std::pow(kPi, 0.25) * std::pow(t, -0.25) * s.value();
  r.method = SmoothedMethod::series28;
  r.truncation = cutoff;
  return r;
}

SmoothedMoment evaluate(SmoothedMethod method, const GridPoint& p, const SweepInputs& in) {
  switch (method) {
    case SmoothedMethod::quadrature:
      return jk_quadrature(p.t, p.G, p.k);
    case SmoothedMethod::series29:
    case SmoothedMethod::series28:
      require(p.k == 1, "the divisor series only represent J_1");
      require(in.dtab != nullptr, "series methods need a divisor table");
      return method == SmoothedMethod::series29 ? j1_series29(p.t, p.G, *in.dtab) : j1_series28(p.t, p.G, *in.dtab);
    case SmoothedMethod::spectral:
      require(p.k == 2, "the spectral series only represents J_2");
      require(in.spectral != nullptr, "spectral method needs a dataset");
      return j2_spectral(p.t, p.G, *in.spectral);
  }
  throw ValidationError("unknown method");
}

ResidualSweep j_residual_sweep(std::span<const GridPoint> grid, SmoothedMethod reference, SmoothedMethod method,
                               const SweepInputs& in) {
  require(!grid.empty(), "sweep grid is empty");
  std::vector<SmoothedMoment> ref(grid.size()), val(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    ref[i] = evaluate(reference, grid[i], in);
    val[i] = reference == method ? ref[i] : evaluate(method, grid[i], in);
  });

  ResidualSweep out;
  std::vector<double> x, y;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double res = val[i].value - ref[i].value;
    const double scaled = res / std::log(grid[i].t);
    ExperimentRecord r;
    r.set("k", grid[i].k).set("t", grid[i].t).set("G", grid[i].G);
    r.set("method", std::string(method_name(method))).set("value", val[i].value);
    r.set("truncation", Field(val[i].truncation));
    r.set("reference", std::string(method_name(reference))).set("reference_value", ref[i].value);
    r.set("residual", res).set("residual_over_log_t", scaled);
    out.rows.push_back(std::move(r));
    out.fitted_C = std::max(out.fitted_C, std::abs(scaled));
    x.push_back(std::log(grid[i].t));
    y.push_back(std::abs(scaled));
  }
  const bool varied = std::any_of(x.begin(), x.end(), [&](double v) { return v != x.front(); });
  if (varied) out.trend_slope = linear_fit(x, y).slope;
  return out;
}

}  // namespace zm
