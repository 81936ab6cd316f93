#pragma once
// Shared arithmetic kernels: divisor sieve, the phase and amplitude of
// Atkinson's formula, the fourth-moment main-term polynomial and the
// Gaussian integral identity.

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace zm {

/// d(n) for 1 <= n <= limit. Immutable once built; safe to share between threads.
class DivisorTable {
 public:
  explicit DivisorTable(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  /// d(n); n must lie in [1, limit].
  std::uint32_t operator[](std::uint64_t n) const { return values_[n]; }
  std::uint32_t at(std::uint64_t n) const;
  /// Values indexed 1..limit (index 0 holds 0).
  std::span<const std::uint32_t> values() const { return values_; }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> values_;
};

/// Linear sieve over smallest prime factors. Throws ValidationError for limit 0.
DivisorTable build_divisor_table(std::uint64_t limit);

/// log(x + sqrt(1 + x^2)); odd Taylor series below 1e-4.
double arsinh(double x);

/// Phase f(T, n) = 2T arsinh(sqrt(pi n / 2T)) + sqrt(2 pi n T + pi^2 n^2) - pi/4.
double atkinson_f(double T, double n);

/// Amplitude e(T, n) = (1 + pi n / 2T)^{-1/4} {(2T / pi n)^{1/2} arsinh(sqrt(pi n / 2T))}^{-1}.
double atkinson_e(double T, double n);

/// N'(T) = T/(2 pi) + N/2 - (N^2/4 + N T/(2 pi))^{1/2}.
double atkinson_nprime(double T, double N);

/// Integral of exp(A x - B x^2) over the real line, sqrt(pi/B) exp(A^2/(4B)). Requires Re B > 0.
std::complex<double> gaussian_integral(std::complex<double> A, std::complex<double> B);

/// Coefficients of P4(x) = sum a_j x^j in the fourth-moment main term T P4(log T).
struct P4Coefficients {
  double a4 = 0.0;
  double a3 = 0.0;
  double a2 = 0.0;
  double a1 = 0.0;
  double a0 = 0.0;

  /// a4 = 1/(2 pi^2), a3 = 2(4 gamma - 1 - log 2pi - 12 zeta'(2) / pi^2) / pi^2, lower terms zero.
  static P4Coefficients defaults();
};

double p4_eval(const P4Coefficients& c, double x);

/// Reads "key = value" lines (keys a0..a4, '#' comments) over the defaults.
/// Unknown keys and malformed numbers raise ValidationError.
P4Coefficients load_p4_config(const std::filesystem::path& path);

}  // namespace zm
