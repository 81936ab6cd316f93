#include "doctest.h"

#include "zm/simd.hpp"
#include "zm/zeta.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace zm;

TEST_SUITE("simd") {
  TEST_CASE("rs_main_sum: AVX2 matches the scalar reference") {
    if (!simd::isa_available(simd::Isa::avx2)) {
      MESSAGE("AVX2 not available; only the scalar path is exercised");
      return;
    }
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> lt(std::log(10.0), std::log(1e9));
    for (int i = 0; i < 400; ++i) {
      const double t = std::exp(lt(rng));
      const double th = std::uniform_real_distribution<double>(0, 6.28)(rng);
      const auto count = static_cast<std::size_t>(std::sqrt(t / 6.283185307179586));
      for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{3}, count}) {
        const double a = simd::scalar::rs_main_sum(t, std::cos(th), std::sin(th), n);
        const double b = simd::avx2::rs_main_sum(t, std::cos(th), std::sin(th), n);
        // sqrt(count) terms of size <= 1: compare against the sum of magnitudes
        CHECK(std::abs(a - b) <= 1e-13 * (1 + 2 * std::sqrt(static_cast<double>(n))));
      }
    }
  }

  TEST_CASE("weighted_sum: AVX2 matches the scalar reference") {
    if (!simd::isa_available(simd::Isa::avx2)) return;
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 100, 1023, 4096}) {
      std::vector<double> w(n), f(n);
      double mag = 0;
      for (std::size_t i = 0; i < n; ++i) {
        w[i] = g(rng);
        f[i] = g(rng);
        mag += std::abs(w[i] * f[i]);
      }
      const double a = simd::scalar::weighted_sum(w, f);
      const double b = simd::avx2::weighted_sum(w, f);
      CHECK(std::abs(a - b) <= 1e-14 * (1 + mag));
    }
  }

  TEST_CASE("forcing a variant changes dispatch but not results") {
    const double t = 123456.789;
    simd::force_isa(simd::Isa::scalar);
    CHECK(simd::active_isa() == simd::Isa::scalar);
    const double zs = hardy_z(t);
    if (simd::isa_available(simd::Isa::avx2)) {
      simd::force_isa(simd::Isa::avx2);
      CHECK(simd::active_isa() == simd::Isa::avx2);
      CHECK(hardy_z(t) == doctest::Approx(zs).epsilon(1e-12));
    } else {
      CHECK_THROWS(simd::force_isa(simd::Isa::avx2));
    }
    simd::force_isa(std::nullopt);
    CHECK(simd::isa_name(simd::Isa::scalar) == "scalar");
  }

  TEST_CASE("mismatched spans are rejected") {
    std::vector<double> a(3), b(4);
    CHECK_THROWS(simd::weighted_sum(a, b));
  }
}
