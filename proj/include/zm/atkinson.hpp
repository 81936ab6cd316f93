#pragma once
// The mean-square error term E(T): by quadrature of |zeta|^2 and by
// Atkinson's explicit sums.

#include "zm/common.hpp"
#include "zm/kernels.hpp"
#include "zm/record.hpp"

#include <array>
#include <functional>
#include <mutex>
#include <span>
#include <vector>

namespace zm {

/// Prefix integrals int_0^T |zeta(1/2+it)|^{2k} dt, k = 1..4, on a fixed grid
/// of 8-node Gauss-Legendre panels. Panel i starts where panel i-1 ends and has
/// width min(0.25, 1.5 / log t_start), so the grid depends only on position and
/// extending the cache never changes earlier values. Every 64th panel is also
/// integrated with 16 nodes; the scaled-up differences form the error estimate.
class MomentCache {
 public:
  static constexpr int kMaxPower = 4;
  static constexpr int kCheckEvery = 64;
  /// Returns |zeta(1/2+it)|^2 (replaceable for tests).
  using Integrand = std::function<double(double)>;

  MomentCache();
  explicit MomentCache(Integrand abs2);

  /// Process-wide cache over the true integrand.
  static MomentCache& shared();

  /// int_0^T f^k, 1 <= k <= 4, T >= 0. Extends the grid as needed.
  double integral(double T, int k);
  /// Estimated absolute quadrature error of integral(T, k).
  double error_estimate(double T, int k);
  /// End of the cached grid.
  double horizon();

  static double panel_width(double start);

 private:
  void extend_to(double T);
  std::size_t panel_before(double T) const;
  std::array<double, kMaxPower> panel_sums(double a, double b, int nodes) const;

  Integrand f_;
  std::mutex mu_;
  std::vector<double> edges_{0.0};
  // prefix_[k-1][i]: integral over [0, edges_[i]]
  std::array<std::vector<double>, kMaxPower> prefix_;
  std::array<std::vector<double>, kMaxPower> err_prefix_;
  std::array<CompensatedSum, kMaxPower> running_;
  std::array<double, kMaxPower> running_err_{};
};

struct QuadratureConfig {
  /// e_direct raises ComputationError if the estimated error exceeds this.
  double tolerance = 1e-3;
};

/// T log(T / 2 pi) + (2 gamma - 1) T.
double mean_square_main_term(double T);

/// int_0^T |zeta|^2 - T log(T/2pi) - (2 gamma - 1) T. T >= 10.
double e_direct(double T, const QuadratureConfig& cfg = {});
double e_direct(double T, const QuadratureConfig& cfg, MomentCache& cache);

enum class Summation { compensated, naive };

/// 2^{1/2} (T/2pi)^{1/4} sum_{n<=N} (-1)^n d(n) n^{-3/4} e(T,n) cos f(T,n).
double sigma1(double T, double N, const DivisorTable& dtab, Summation mode = Summation::compensated);

/// -2 sum_{n<=N'} d(n) n^{-1/2} (log(T/2pi n))^{-1} cos(T log(T/2pi n) - T + pi/4).
double sigma2(double T, double Nprime, const DivisorTable& dtab);

/// Cutoffs for Atkinson's formula with A N-window [A T, A' T].
struct AtkinsonParams {
  double T = 0.0;
  double N = 0.0;
  double Nprime = 0.0;

  static constexpr double kA = 0.5;
  static constexpr double kAprime = 2.0;
  /// Validates T >= 10 and A T <= N <= A' T.
  static AtkinsonParams make(double T, double N);
};

struct ETRecord {
  double T = 0.0;
  double e_direct = 0.0;
  double e_atkinson = 0.0;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double residual = 0.0;

  ExperimentRecord to_record() const;
  static const std::vector<std::string>& columns();
};

/// Divisor table large enough for sigma1 at (T, N).
std::uint64_t atkinson_table_limit(double N);

/// Both evaluations of E(T); N defaults to T when <= 0.
ETRecord e_atkinson(double T, double N, const DivisorTable& dtab, const QuadratureConfig& cfg = {});

/// e_atkinson with N = T at each height, sharing one divisor table and the moment cache.
std::vector<ETRecord> et_sweep(std::span<const double> heights, const QuadratureConfig& cfg = {});

}  // namespace zm
