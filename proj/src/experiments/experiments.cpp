#include "zm/experiments.hpp"

#include "zm/atkinson.hpp"
#include "zm/common.hpp"
#include "zm/smoothed.hpp"
#include "zm/zeta.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace zm {

double i_k(double T, int k) {
  require(k >= 1 && k <= MomentCache::kMaxPower, "i_k needs k in {1, 2, 3, 4}");
  require(std::isfinite(T) && T >= 0, "i_k needs a finite T >= 0");
  require(k == 1 || T <= 1e5, "i_k is limited to T <= 1e5 for k >= 2");
  if (T == 0) return 0.0;
  return MomentCache::shared().integral(T, k);
}

MomentSweep moment_of_jk(const MomentSweepConfig& cfg) {
  require(cfg.k >= 1 && cfg.k <= 4, "moment sweep needs k in {1, 2, 3, 4}");
  require(cfg.m >= 1 && cfg.m <= 4, "moment sweep needs m in {1, 2, 3, 4}");
  require(cfg.theta > 0 && cfg.theta <= 1, "moment sweep needs theta in (0, 1]");
  require(!cfg.T_grid.empty(), "moment sweep T grid is empty");
  for (double T : cfg.T_grid) require(std::isfinite(T) && T >= 10, "moment sweep heights must be >= 10");

  MomentSweep out;
  std::vector<double> x;
  for (double T : cfg.T_grid) {
    const double G = std::pow(T, cfg.theta);
    const SmoothedField field(T, 2 * T, G, cfg.k, cfg.max_step);
    const double integral = field.integral_of_power(cfg.m);
    const double ratio = integral / std::pow(T, 1 + kEpsProxy);
    ExperimentRecord row;
    row.set("T", T).set("G", G).set("k", cfg.k).set("m", cfg.m).set("theta", cfg.theta);
    row.set("integral", integral).set("ratio", ratio).set("reflected", field.reflected() ? 1 : 0);
    out.rows.push_back(std::move(row));
    if (!out.ratios.empty() && ratio > out.ratios.back()) out.non_increasing = false;
    out.ratios.push_back(ratio);
    x.push_back(std::log(T));
  }
  if (std::any_of(x.begin(), x.end(), [&](double v) { return v != x.front(); }))
    out.trend_slope = linear_fit(x, out.ratios).slope;
  return out;
}

std::vector<std::pair<double, double>> exceedance_measure(double T, double G, int k, std::span<const double> U_grid) {
  require(std::isfinite(T) && T >= 10, "exceedance needs T >= 10");
  const SmoothedField field(T, 2 * T, G, k, 0.05);
  const auto v = field.values();
  const double h = field.step();
  std::vector<std::pair<double, double>> out;
  out.reserve(U_grid.size());
  for (double U : U_grid) {
    CompensatedSum mu;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      const double a = v[i] - U, b = v[i + 1] - U;
      if (a >= 0 && b >= 0)
        mu += h;
      else if (a > 0 || b > 0)
        mu += h * std::max(a, b) / std::abs(a - b);  // part of the segment above U
    }
    out.emplace_back(U, mu.value());
  }
  return out;
}

namespace {

double abs_zeta(double t) { return std::abs(hardy_z(t)); }

// Maximizer of |zeta| on [a, b] by golden section (|Z| is unimodal on the
// bracket of a sampled local maximum).
std::pair<double, double> refine_max(double a, double b) {
  constexpr double g = 0.6180339887498949;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = abs_zeta(c), fd = abs_zeta(d);
  for (int it = 0; it < 60 && b - a > 1e-10; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = abs_zeta(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = abs_zeta(d);
    }
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace

std::vector<std::pair<double, double>> large_value_peaks(double T, double V_min) {
  require(std::isfinite(T) && T >= 10, "large values need T >= 10");
  require(std::isfinite(V_min) && V_min > 0, "large values need V > 0");
  constexpr double kStep = 0.05;
  const auto n = static_cast<std::size_t>(std::ceil(T / kStep));
  const double h = T / static_cast<double>(n);
  std::vector<double> s(n + 1);
  parallel_for(n + 1, [&](std::size_t i) { s[i] = abs_zeta(T + static_cast<double>(i) * h); });

  // sampled local maxima worth refining; the sampled value of a peak is within
  // a few percent of the true one at this step
  std::vector<std::size_t> cand;
  for (std::size_t i = 0; i <= n; ++i) {
    const bool left = i == 0 || s[i] >= s[i - 1];
    const bool right = i == n || s[i] > s[i + 1];
    if (left && right && s[i] >= 0.8 * V_min) cand.push_back(i);
  }
  std::vector<std::pair<double, double>> peak(cand.size());
  parallel_for(cand.size(), [&](std::size_t j) {
    const std::size_t i = cand[j];
    const double a = T + static_cast<double>(i == 0 ? 0 : i - 1) * h;
    const double b = T + static_cast<double>(i == n ? n : i + 1) * h;
    auto best = refine_max(a, b);
    if (s[i] > best.second) best = {T + static_cast<double>(i) * h, s[i]};
    peak[j] = best;
  });
  return peak;
}

LargeValueRecord select_large_values(double T, double V, std::span<const std::pair<double, double>> peaks) {
  require(std::isfinite(V) && V > 0, "large values need V > 0");
  LargeValueRecord rec;
  rec.T = T;
  rec.V = V;
  for (const auto& [t, v] : peaks) {
    if (v < V) continue;
    if (!rec.points.empty() && t - rec.points.back() < 1) continue;
    rec.points.push_back(t);
    rec.values.push_back(v);
  }
  rec.R = static_cast<std::int64_t>(rec.points.size());
  return rec;
}

LargeValueRecord large_value_points(double T, double V) {
  require(std::isfinite(V) && V > 0, "large values need V > 0");
  return select_large_values(T, V, large_value_peaks(T, V));
}

std::int64_t greedy_cover_count(std::span<const double> points, double G) {
  require(G >= 1.0 / 3, "cover half-width must be >= 1/3");
  std::int64_t count = 0;
  double covered_to = -INFINITY;
  for (double t : points) {
    if (t + 1.0 / 3 <= covered_to) continue;
    // new interval starts at the left end of this point's interval
    covered_to = t - 1.0 / 3 + 2 * G;
    ++count;
  }
  return count;
}

ConvexityReport pointwise_convexity_check(std::span<const double> t_grid, int k) {
  require(k == 1 || k == 2, "convexity check needs k in {1, 2}");
  for (double t : t_grid) require(std::isfinite(t) && t >= 10, "convexity check needs t >= 10");
  const auto& gl = gauss_legendre(16);
  constexpr int kPanels = 8;
  ConvexityReport rep;
  std::vector<std::array<double, 3>> res(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t i) {
    const double t = t_grid[i];
    auto f = [k](double u) { return std::pow(abs_zeta(u), k); };
    const double a = t - 1.0 / 3, w = (2.0 / 3) / kPanels;
    CompensatedSum s;
    for (int p = 0; p < kPanels; ++p) {
      const double mid = a + (p + 0.5) * w;
      for (std::size_t j = 0; j < gl.nodes.size(); ++j) s += 0.5 * w * gl.weights[j] * f(mid + 0.5 * w * gl.nodes[j]);
    }
    const double lhs = f(t);
    res[i] = {lhs, s.value(), lhs / (std::log(t) * s.value() + 1)};
  });
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    ExperimentRecord row;
    row.set("t", t_grid[i]).set("lhs", res[i][0]).set("local_integral", res[i][1]).set("ratio", res[i][2]);
    rep.rows.push_back(std::move(row));
    rep.fitted_C = std::max(rep.fitted_C, res[i][2]);
  }
  return rep;
}

P4Calibration calibrate_p4(std::span<const double> T_grid, const P4Coefficients& fixed) {
  require(T_grid.size() >= 3, "calibration needs at least 3 heights");
  for (double T : T_grid) require(std::isfinite(T) && T >= 10 && T <= 1e5, "calibration heights must lie in [10, 1e5]");

  // weighted least squares: minimize sum ((I2 - T P4) / T^0.7)^2 over a2, a1, a0
  const std::size_t n = T_grid.size();
  std::vector<double> I2(n), y(n), wt(n), L(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double T = T_grid[i];
    L[i] = std::log(T);
    I2[i] = i_k(T, 2);
    y[i] = (I2[i] - T * (fixed.a4 * std::pow(L[i], 4) + fixed.a3 * std::pow(L[i], 3))) / std::pow(T, 0.7);
    wt[i] = std::pow(T, 0.3);  // T / T^0.7 multiplies each basis function
  }
  long double A[3][4] = {};
  for (std::size_t i = 0; i < n; ++i) {
    const long double phi[3] = {wt[i] * L[i] * L[i], wt[i] * L[i], wt[i]};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) A[r][c] += phi[r] * phi[c];
      A[r][3] += phi[r] * y[i];
    }
  }
  for (int p = 0; p < 3; ++p) {
    int piv = p;
    for (int r = p + 1; r < 3; ++r)
      if (std::abs(A[r][p]) > std::abs(A[piv][p])) piv = r;
    std::swap(A[p], A[piv]);
    if (A[p][p] == 0) throw ValidationError("calibration heights do not determine a2, a1, a0");
    for (int r = 0; r < 3; ++r) {
      if (r == p) continue;
      const long double f = A[r][p] / A[p][p];
      for (int c = p; c < 4; ++c) A[r][c] -= f * A[p][c];
    }
  }
  P4Calibration cal;
  cal.coeffs = fixed;
  cal.coeffs.a2 = static_cast<double>(A[0][3] / A[0][0]);
  cal.coeffs.a1 = static_cast<double>(A[1][3] / A[1][1]);
  cal.coeffs.a0 = static_cast<double>(A[2][3] / A[2][2]);

  std::vector<double> x, r07;
  for (std::size_t i = 0; i < n; ++i) {
    const double T = T_grid[i];
    const double main = T * p4_eval(cal.coeffs, L[i]);
    const double res = I2[i] - main;
    const double a = std::abs(res) / std::pow(T, 0.7);
    const double b = std::abs(res) / (std::pow(T, 2.0 / 3) * std::pow(L[i], 8));
    ExperimentRecord row;
    row.set("T", T).set("I2", I2[i]).set("main_term", main).set("residual", res);
    row.set("residual_over_T07", a).set("residual_over_T23_log8", b);
    cal.rows.push_back(std::move(row));
    cal.fitted_C = std::max(cal.fitted_C, a);
    cal.fitted_C_log8 = std::max(cal.fitted_C_log8, b);
    x.push_back(L[i]);
    r07.push_back(a);
  }
  cal.trend_slope = linear_fit(x, r07).slope;
  return cal;
}

}  // namespace zm
