#pragma once
// End-to-end moment experiments: I_k(T), integrals of J_k^m over [T, 2T],
// exceedance measures, 1-spaced large values and the large-value pipeline
// that turns a J_k^m bound into a moment bound.

#include "zm/kernels.hpp"
#include "zm/record.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace zm {

/// Shapes of the form T^{1+eps} are checked with this eps.
inline constexpr double kEpsProxy = 0.05;

/// int_0^T |zeta(1/2+it)|^{2k} dt from the shared moment cache. k in 1..4,
/// T >= 0, and T <= 1e5 when k >= 2.
double i_k(double T, int k);

struct MomentSweepConfig {
  int k = 1;
  int m = 1;                    // 1..4
  std::vector<double> T_grid;   // each T >= 10
  double theta = 0.2;           // G = T^theta, theta in (0, 1]
  double max_step = 0.25;       // cap on the field step
};

struct MomentSweep {
  /// Columns T, G, k, m, theta, integral, ratio (integral / T^{1.05}), reflected.
  std::vector<ExperimentRecord> rows;
  std::vector<double> ratios;
  bool non_increasing = true;  // ratios in grid order
  double trend_slope = 0.0;    // slope of ratio against ln T
};

/// int_T^{2T} J_k^m(t, T^theta) dt by the trapezoid rule over a SmoothedField.
MomentSweep moment_of_jk(const MomentSweepConfig& cfg);

/// mu{t in [T, 2T] : J_k(t, G) >= U} per U, sampled at step <= 0.05 with the
/// indicator linearly interpolated between samples.
std::vector<std::pair<double, double>> exceedance_measure(double T, double G, int k, std::span<const double> U_grid);

struct LargeValueRecord {
  double T = 0.0;
  double V = 0.0;
  std::int64_t R = 0;
  std::vector<double> points;  // t_r, increasing, gaps >= 1
  std::vector<double> values;  // |zeta(1/2 + i t_r)|
};

/// Scans [T, 2T] at step 0.05, refines local maxima of |zeta| by golden
/// section and takes points with |zeta| >= V greedily from the left, keeping
/// a gap of at least 1. T >= 10, V > 0.
LargeValueRecord large_value_points(double T, double V);

/// The scan behind large_value_points: refined local maxima (t, |zeta|), in
/// increasing t, covering every peak of height >= V_min.
std::vector<std::pair<double, double>> large_value_peaks(double T, double V_min);
/// Greedy 1-spaced selection of the peaks with |zeta| >= V.
LargeValueRecord select_large_values(double T, double V, std::span<const std::pair<double, double>> peaks);

/// Number of intervals [tau - G, tau + G] a greedy left-to-right cover needs
/// to contain every [t_r - 1/3, t_r + 1/3].
std::int64_t greedy_cover_count(std::span<const double> points, double G);

struct Theorem4Row {
  double V = 0.0;
  std::int64_t R = 0;
  std::int64_t covers = 0;  // greedy_cover_count(points, G)
  double shape = 0.0;       // R V^{2km} / (T^{1.05} G^{m-1})
  bool flagged = false;     // V < 2: below the T^eps proxy, not fitted
};

struct Theorem4Report {
  double T = 0.0;
  int k = 1;
  int m = 1;
  double alpha = 0.0;
  double G = 0.0;  // T^{alpha + 0.05}
  std::vector<Theorem4Row> rows;
  double fitted_C = 0.0;       // max shape over unflagged rows
  double implied_exponent = 0.0;  // 1 + (m - 1) alpha
  double moment = 0.0;         // I_{km}(T)
  double implied_ratio = 0.0;  // I_{km}(T) / T^{implied_exponent + 0.05}

  std::vector<ExperimentRecord> records() const;  // one per V
  std::string to_json() const;
};

/// (k, m, alpha) must lie in the ranges where the J_k^m bound is proved:
/// k = 1 needs alpha >= 0 (m <= 2), 1/7 (m = 3), 1/5 (m = 4);
/// k = 2 needs m <= 2 and alpha >= 1/2. km <= 4 (the moment cache range).
Theorem4Report theorem4_pipeline(double T, int k, int m, double alpha, std::span<const double> V_grid);

struct ConvexityReport {
  /// Columns t, lhs (|zeta|^k), local_integral, ratio = lhs / (log t * local_integral + 1).
  std::vector<ExperimentRecord> rows;
  double fitted_C = 0.0;  // max ratio
};

/// |zeta(1/2+it)|^k <= C (log t int_{t-1/3}^{t+1/3} |zeta(1/2+iu)|^k du + 1). k in {1, 2}, t >= 10.
ConvexityReport pointwise_convexity_check(std::span<const double> t_grid, int k);

struct P4Calibration {
  P4Coefficients coeffs;  // a4, a3 fixed; a2, a1, a0 fitted
  /// Columns T, I2, main_term, residual, residual_over_T07, residual_over_T23_log8.
  std::vector<ExperimentRecord> rows;
  double fitted_C = 0.0;     // max |residual| / T^{0.7}
  double trend_slope = 0.0;  // slope of |residual| / T^{0.7} against ln T
  double fitted_C_log8 = 0.0;  // max |residual| / (T^{2/3} log^8 T)
};

/// Fits a2, a1, a0 by least squares on (I_2 - T P4(log T)) / T^{0.7} over the
/// grid (at least 3 heights in [10, 1e5]) with a4, a3 held at `fixed`.
P4Calibration calibrate_p4(std::span<const double> T_grid, const P4Coefficients& fixed = P4Coefficients::defaults());

}  // namespace zm
