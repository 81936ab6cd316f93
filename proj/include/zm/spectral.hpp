#pragma once
// Externally tabulated Maass-form data (kappa_j, alpha_j H_j^3(1/2)) and the
// spectral series for J_2.

#include "zm/record.hpp"
#include "zm/smoothed.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace zm {

struct SpectralDatum {
  double kappa = 0.0;    // lambda_j = kappa_j^2 + 1/4
  double alphaH3 = 0.0;  // alpha_j H_j^3(1/2), in the convention of the source table
};

struct SpectralDataset {
  std::vector<SpectralDatum> data;  // strictly increasing kappa
  std::string source;               // file path or caller-supplied label
  std::string normalization;        // from a "# normalization:" header line, if present
  double max_kappa = 0.0;           // 0 for an empty set
};

/// One "kappa alphaH3" pair per line, whitespace separated; '#' starts a
/// comment. "# source: ..." and "# normalization: ..." header comments are
/// kept as provenance. Errors carry the 1-based line number.
SpectralDataset load_spectral(const std::filesystem::path& path);
SpectralDataset parse_spectral(std::string_view text, std::string source);
/// Validates ordering and finiteness; sets max_kappa.
SpectralDataset make_spectral(std::vector<SpectralDatum> data, std::string source);

/// Writes the file format above with 17 significant digits (load reproduces it exactly).
void write_spectral(const SpectralDataset& ds, const std::filesystem::path& path);

/// t G^{-1} log t: spectral coverage the J_2 series needs.
double j2_spectral_cutoff(double t, double G);

/// (pi / sqrt(2t)) sum_{kappa_j <= cutoff} alphaH3_j kappa_j^{-1/2} sin(kappa_j log(kappa_j / (4 e t)))
///   exp(-(G kappa_j / t)^2 / 4), for t^{1/2} log^{-D} t <= G <= t / log t.
/// A non-empty dataset must reach the cutoff. The O(log^{3D+9} t) offset is
/// not included. cutoff_scale > 1 extends the sum (truncation-stability checks).
SmoothedMoment j2_spectral(double t, double G, const SpectralDataset& ds, double D = 1.0,
                           double cutoff_scale = 1.0);

/// sum of alphaH3 over K - 1 <= kappa_j <= K + 1. K >= 1.
double spectral_window_sum(const SpectralDataset& ds, double K);

/// Ordered quadruples with kappas in (K, 2K] and
/// |sqrt(l_j) + sqrt(l_m) - sqrt(l_l) - sqrt(l_n)| < delta, by enumeration
/// (at most 150 kappas in the window).
std::uint64_t count_spectral_quadruples(const SpectralDataset& ds, double K, double delta);

/// value(K) <= C * shape(K) across a K grid: C = max ratio, trend = slope of ratio against ln K.
struct ShapeReport {
  std::vector<ExperimentRecord> rows;  // K, value, shape, ratio
  double fitted_C = 0.0;
  double trend_slope = 0.0;
  bool flagged = false;  // upward trend (slope > 0.1 * C)
};

/// Partial sums sum_{kappa_j <= K} alphaH3 against K^2 log^3 K.
ShapeReport spectral_partial_sum_shape(const SpectralDataset& ds, std::span<const double> K_grid);
/// Window sums against K^{1 + eps}.
ShapeReport spectral_window_shape(const SpectralDataset& ds, std::span<const double> K_grid, double eps = 0.1);

}  // namespace zm
