#pragma once
// Gaussian-smoothed local moments
//   J_k(t, G) = (sqrt(pi) G)^{-1} int |zeta(1/2 + i(t+u))|^{2k} exp(-(u/G)^2) du
// by quadrature, and for k = 1 by the two oscillatory divisor series.

#include "zm/kernels.hpp"
#include "zm/record.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace zm {

struct SpectralDataset;

enum class SmoothedMethod { quadrature, series29, series28, spectral };

std::string_view method_name(SmoothedMethod m);
SmoothedMethod parse_method(std::string_view name);

struct SmoothedMoment {
  int k = 1;
  double t = 0.0;
  double G = 0.0;
  double value = 0.0;
  SmoothedMethod method = SmoothedMethod::quadrature;
  std::int64_t truncation = 0;  // series length; 0 for quadrature
  bool reflected = false;       // quadrature window reached u < -t
};

/// |zeta(1/2 + it)|^2 as a function of t; replaceable for tests.
using Abs2Function = std::function<double(double)>;

/// Relative size of the dropped Gaussian tail.
inline constexpr double kWindowTolerance = 1e-12;

/// G sqrt(ln(1 / kWindowTolerance)).
double window_half_width(double G);

/// Trapezoid step for |zeta|^{2k} near height t: the panel width of the
/// moment cache divided by k. |zeta|^{2k} has frequencies up to about
/// k log(t / 2 pi), so 2 pi / step stays several times above the band edge.
double quadrature_step(double t, int k);

/// Trapezoid rule on t + j h, |j h| <= window_half_width(G). The Gaussian
/// weight makes this spectrally accurate. t >= 10, G >= 1, 1 <= k <= 4.
SmoothedMoment jk_quadrature(double t, double G, int k);
SmoothedMoment jk_quadrature(double t, double G, int k, const Abs2Function& abs2);

/// ceil(t G^{-2} log t), the shortest admissible series29 cutoff.
std::int64_t series29_min_cutoff(double t, double G);

/// -sqrt(2) sum_{n <= cutoff} (-1)^n d(n) n^{-1/2} ((t/(2 pi n) + 1/4)^{1/2} - 1/2)^{-1/2}
///   exp(-G^2 arsinh^2 sqrt(pi n / 2t)) sin f(t, n).
/// cutoff <= 0 selects series29_min_cutoff. The O(log t) offset of the
/// explicit formula is not included. The leading minus matches the derivative
/// of the cos f(t, n) sum in E(T): with it, log(t/2pi) + 2 gamma + series tracks
/// J_1 near large values of zeta; the opposite sign anti-correlates.
SmoothedMoment j1_series29(double t, double G, const DivisorTable& dtab, std::int64_t cutoff = 0);

/// Smallest n with exp(-pi n G^2 / 2t) < 1e-16.
std::int64_t series28_cutoff(double t, double G);

/// -2^{3/4} pi^{1/4} t^{-1/4} sum_{n <= cutoff} (-1)^n d(n) n^{-1/4} sin f(t, n) exp(-pi n G^2 / 2t),
/// valid for t^{1/4} <= G <= t / log t. cutoff <= 0 selects series28_cutoff.
SmoothedMoment j1_series28(double t, double G, const DivisorTable& dtab, std::int64_t cutoff = 0);

/// Term n of either series (without the outer constants), for tests of the shared phase.
struct SeriesTerm {
  double phase;      // f(t, n), the argument of the sine
  double amplitude;  // everything multiplying sin f(t, n)
};
SeriesTerm series29_term(double t, double G, std::int64_t n, std::uint32_t dn);
SeriesTerm series28_term(double t, double G, std::int64_t n, std::uint32_t dn);

struct GridPoint {
  double t = 0.0;
  double G = 0.0;
  int k = 1;
};

/// Inputs the series and spectral methods need; quadrature needs neither.
struct SweepInputs {
  const DivisorTable* dtab = nullptr;
  const SpectralDataset* spectral = nullptr;
};

struct ResidualSweep {
  /// Columns k, t, G, method, value, truncation, reference, reference_value,
  /// residual, residual_over_log_t.
  std::vector<ExperimentRecord> rows;
  double fitted_C = 0.0;     // max |residual| / log t
  double trend_slope = 0.0;  // slope of |residual| / log t against ln t (0 if t is constant)
};

/// Evaluates `reference` and `method` at every grid point; residual = method - reference.
SmoothedMoment evaluate(SmoothedMethod method, const GridPoint& p, const SweepInputs& in);
ResidualSweep j_residual_sweep(std::span<const GridPoint> grid, SmoothedMethod reference, SmoothedMethod method,
                               const SweepInputs& in);

/// J_k(., G) on the uniform grid lo + i h, i = 0..n, by FFT convolution of
/// sampled |zeta|^{2k} with the truncated Gaussian. Matches jk_quadrature
/// at the nodes up to the step choice.
class SmoothedField {
 public:
  /// max_step caps the grid step (e.g. 0.05 for exceedance sampling).
  SmoothedField(double lo, double hi, double G, int k, double max_step = 0.25, const Abs2Function& abs2 = {});

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double step() const { return h_; }
  double G() const { return G_; }
  int k() const { return k_; }
  bool reflected() const { return reflected_; }
  std::span<const double> values() const { return values_; }
  double node(std::size_t i) const { return lo_ + static_cast<double>(i) * h_; }

  /// Trapezoid integral of J^m over [lo, hi].
  double integral_of_power(int m) const;

 private:
  double lo_, hi_, G_, h_;
  int k_;
  bool reflected_ = false;
  std::vector<double> values_;
};

}  // namespace zm
