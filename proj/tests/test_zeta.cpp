#include "doctest.h"

#include "zm/common.hpp"
#include "zm/zeta.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace zm;

namespace {
constexpr double kFirstZero = 14.134725141734695;

double dist(const ZetaPoint& a, const ZetaPoint& b) { return std::hypot(a.re - b.re, a.im - b.im); }
}  // namespace

TEST_SUITE("zeta") {
  TEST_CASE("Riemann-Siegel agrees with Euler-Maclaurin") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(10, 1e4);
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
      const double t = u(rng);
      worst = std::max(worst, dist(zeta_rs(t), zeta_em(t)));
    }
    CHECK(worst < 1e-9);
    CHECK(dist(zeta_rs(100), zeta_em(100)) < 1e-8);
    // the weakest height for the asymptotic series
    CHECK(dist(zeta_rs(10), zeta_em(10)) < 1e-7);
  }

  TEST_CASE("first zero") {
    CHECK(std::sqrt(zeta_rs(kFirstZero).abs2) < 1e-6);
    CHECK(std::sqrt(zeta_em(kFirstZero).abs2) < 1e-6);
    CHECK(abs_zeta_pow(kFirstZero, 2) < 1e-10);
  }

  TEST_CASE("zeta(1/2) and the remainder bound") {
    const auto e = zeta_em_bounded(0.0);
    CHECK(e.point.re == doctest::Approx(-1.4603545088095868).epsilon(1e-15));
    CHECK(e.point.im == 0);
    CHECK(e.error_bound < 1e-30);
    for (double t : {10.0, 1e3, 1e4}) CHECK(zeta_em_bounded(t).error_bound < 1e-10);
  }

  TEST_CASE("reflection") {
    for (double t : {50.0, 777.7}) {
      const auto a = zeta_rs(t), b = zeta_rs(-t);
      CHECK(a.re == b.re);
      CHECK(a.im == -b.im);
    }
    const auto a = zeta_em(3.3), b = zeta_em(-3.3);
    CHECK(a.re == b.re);
    CHECK(a.im == -b.im);
    CHECK(hardy_z(123.4) == hardy_z(-123.4));
  }

  TEST_CASE("theta rotates zeta onto the real axis") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.5, 3000);
    for (int i = 0; i < 60; ++i) {
      const double t = u(rng);
      const auto z = zeta_em(t);
      const std::complex<double> rot = std::polar(1.0, rs_theta(t)) * std::complex<double>(z.re, z.im);
      CHECK(std::abs(rot.imag()) < 1e-9);
      CHECK(rot.real() == doctest::Approx(hardy_z(t)).epsilon(1e-8));
      CHECK(rs_theta(t) >= 0);
      CHECK(rs_theta(t) < kTwoPi);
    }
  }

  TEST_CASE("Hardy Z has 29 sign changes on [0, 100]") {
    int changes = 0;
    double prev = hardy_z(0.0);
    for (int i = 1; i <= 10000; ++i) {
      const double z = hardy_z(i * 0.01);
      if ((z < 0) != (prev < 0)) ++changes;
      prev = z;
    }
    CHECK(changes == 29);
  }

  TEST_CASE("abs_zeta_pow") {
    for (double t : {2.0, 20.0, 2000.0}) {
      const double a = abs_zeta_pow(t, 1);
      CHECK(a == doctest::Approx(zeta(t).abs2).epsilon(1e-13));
      CHECK(abs_zeta_pow(t, 2) == doctest::Approx(a * a).epsilon(1e-13));
      CHECK(abs_zeta_pow(t, 4) == doctest::Approx(a * a * a * a).epsilon(1e-12));
    }
    CHECK_THROWS_AS(abs_zeta_pow(20, 0), ValidationError);
  }

  TEST_CASE("switch-over and guards") {
    CHECK_THROWS_AS(zeta_rs(5.0), ValidationError);
    CHECK(dist(zeta(5.0), zeta_em(5.0)) == 0);
    CHECK(dist(zeta(50.0), zeta_rs(50.0)) == 0);
  }

  TEST_CASE("log_gamma on the real axis and by recurrence") {
    for (double x : {0.25, 1.0, 2.5, 7.0, 31.0}) CHECK(log_gamma(x).real() == doctest::Approx(std::lgamma(x)).epsilon(1e-14));
    for (std::complex<double> z : {std::complex<double>(0.25, 3.0), std::complex<double>(2.0, -40.0)}) {
      // log Gamma(z + 1) - log Gamma(z) = log z up to 2 pi i
      const auto d = log_gamma(z + 1.0) - log_gamma(z) - std::log(z);
      CHECK(std::abs(d.real()) < 1e-12);
      const double k = std::round(d.imag() / kTwoPi);
      CHECK(std::abs(d.imag() - k * kTwoPi) < 1e-11);
    }
  }
}
