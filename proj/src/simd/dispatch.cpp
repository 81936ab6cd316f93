#include "zm/common.hpp"
#include "zm/simd.hpp"

#include <atomic>

namespace zm::simd {

#ifndef ZM_BUILD_AVX2
namespace avx2 {
double rs_main_sum(double, double, double, std::size_t) {
  throw ComputationError("AVX2 kernels not compiled into this build");
}
double weighted_sum(std::span<const double>, std::span<const double>) {
  throw ComputationError("AVX2 kernels not compiled into this build");
}
}  // namespace avx2
#endif

namespace {

bool cpu_has_avx2() {
#if defined(ZM_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() { return cpu_has_avx2() ? Isa::avx2 : Isa::scalar; }

std::atomic<Isa> g_active{detect()};

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) { return isa == Isa::scalar || cpu_has_avx2(); }

Isa active_isa() { return g_active.load(std::memory_order_relaxed); }

void force_isa(std::optional<Isa> isa) {
  if (!isa) {
    g_active.store(detect());
    return;
  }
  require(isa_available(*isa), "instruction set " + std::string(isa_name(*isa)) + " unavailable");
  g_active.store(*isa);
}

double rs_main_sum(double t, double cos_theta, double sin_theta, std::size_t count) {
  return active_isa() == Isa::avx2 ? avx2::rs_main_sum(t, cos_theta, sin_theta, count)
                                   : scalar::rs_main_sum(t, cos_theta, sin_theta, count);
}

double weighted_sum(std::span<const double> w, std::span<const double> f) {
  require(w.size() == f.size(), "weighted_sum needs spans of equal length");
  return active_isa() == Isa::avx2 ? avx2::weighted_sum(w, f) : scalar::weighted_sum(w, f);
}

}  // namespace zm::simd
