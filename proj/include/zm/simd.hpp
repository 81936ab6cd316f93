#pragma once
// Data-parallel inner loops. Each kernel has a scalar reference and, on
// x86-64, an AVX2+FMA variant chosen at runtime from CPUID.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace zm::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
/// The variant the dispatched entry points use.
Isa active_isa();
/// Pin a variant (tests, benchmarking); std::nullopt restores auto-detection.
/// Throws ValidationError if the variant is unavailable on this CPU/build.
void force_isa(std::optional<Isa> isa);

/// sum_{n=1}^{count} n^{-1/2} cos(theta - t log n), with theta passed as
/// (cos theta, sin theta). t log n is reduced modulo pi/2 in double-double,
/// so the phase stays accurate to ~1e-15 up to t ~ 1e9.
double rs_main_sum(double t, double cos_theta, double sin_theta, std::size_t count);

/// sum_i w[i] * f[i]. Spans must have equal length.
double weighted_sum(std::span<const double> w, std::span<const double> f);

// Direct access to each variant, for equivalence tests.
namespace scalar {
double rs_main_sum(double t, double cos_theta, double sin_theta, std::size_t count);
double weighted_sum(std::span<const double> w, std::span<const double> f);
}  // namespace scalar

namespace avx2 {
double rs_main_sum(double t, double cos_theta, double sin_theta, std::size_t count);
double weighted_sum(std::span<const double> w, std::span<const double> f);
}  // namespace avx2

}  // namespace zm::simd
