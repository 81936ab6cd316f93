#include "doctest.h"
#include "oracle.hpp"

#include "zm/common.hpp"
#include "zm/kernels.hpp"

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <random>

using namespace zm;

TEST_SUITE("kernels") {
  TEST_CASE("divisor table agrees with trial division") {
    const auto d = build_divisor_table(20000);
    CHECK(d.limit() == 20000);
    CHECK(d.values().size() == 20001);
    for (std::uint64_t n = 1; n <= 20000; ++n) REQUIRE(d[n] == oracle::divisors(n));
    CHECK(d.at(720) == 30);
    CHECK_THROWS_AS(d.at(0), ValidationError);
    CHECK_THROWS_AS(d.at(20001), ValidationError);
    CHECK_THROWS_AS(build_divisor_table(0), ValidationError);
  }

  TEST_CASE("divisor table at tiny limits") {
    CHECK(build_divisor_table(1)[1] == 1);
    CHECK(build_divisor_table(12)[12] == 6);
  }

  TEST_CASE("arsinh matches the log form and stays accurate near 0") {
    for (double x : {1e-9, 3e-5, 1e-4, 0.01, 0.5, 1.0, 7.0, 1e3}) {
      const auto want = static_cast<double>(oracle::asinh(oracle::Big(x)));
      CHECK(arsinh(x) == doctest::Approx(want).epsilon(2e-16));
      CHECK(arsinh(-x) == -arsinh(x));
    }
    CHECK(arsinh(0.5) == doctest::Approx(std::log((1 + std::sqrt(5.0)) / 2)).epsilon(1e-16));
  }

  TEST_CASE("phase, amplitude and N' against 50-digit evaluation") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lt(std::log(10.0), std::log(1e7));
    for (int i = 0; i < 300; ++i) {
      const double T = std::exp(lt(rng));
      const double n = std::floor(std::uniform_real_distribution<double>(1, 3 * T)(rng));
      const double f = atkinson_f(T, n);
      // absolute phase error is what matters inside cos
      CHECK(std::abs(f - static_cast<double>(oracle::f(T, n))) <= 4e-16 * std::abs(f) + 1e-12);
      CHECK(atkinson_e(T, n) == doctest::Approx(static_cast<double>(oracle::e(T, n))).epsilon(1e-14));
      const double N = std::uniform_real_distribution<double>(0.5 * T, 2 * T)(rng);
      CHECK(atkinson_nprime(T, N) == doctest::Approx(static_cast<double>(oracle::nprime(T, N))).epsilon(1e-13));
    }
  }

  TEST_CASE("substitution values at T = 2 pi") {
    CHECK(atkinson_f(kTwoPi, 1) ==
          doctest::Approx(4 * kPi * std::log((1 + std::sqrt(5.0)) / 2) + std::sqrt(5 * kPi * kPi) - kPi / 4)
              .epsilon(1e-15));
    CHECK(atkinson_nprime(kTwoPi, kTwoPi) == doctest::Approx(1 + kPi - std::sqrt(kPi * kPi + 2 * kPi)).epsilon(1e-15));
  }

  TEST_CASE("gaussian integral against numerical quadrature") {
    CHECK(gaussian_integral(0.0, 1.0).real() == doctest::Approx(std::sqrt(kPi)).epsilon(1e-15));
    CHECK(gaussian_integral(2.0, 1.0).real() == doctest::Approx(std::sqrt(kPi) * std::exp(1.0)).epsilon(1e-15));
    const std::complex<double> cases[][2] = {
        {{0.3, 1.2}, {0.7, 0.4}}, {{-1.0, 0.5}, {2.0, -1.0}}, {{0.0, 3.0}, {1.0, 0.0}}, {{1.5, -2.0}, {0.5, 0.5}}};
    for (const auto& c : cases) {
      const auto A = c[0], B = c[1];
      // trapezoid on a wide interval is spectrally accurate for this integrand
      const double h = 2e-3, L = 40;
      std::complex<double> s = 0;
      for (double x = -L; x <= L; x += h) s += std::exp(A * x - B * x * x);
      s *= h;
      const auto v = gaussian_integral(A, B);
      CHECK(std::abs(v - s) <= 1e-10 * std::abs(s));
    }
    CHECK_THROWS_AS(gaussian_integral(1.0, std::complex<double>(0.0, 1.0)), ValidationError);
  }

  TEST_CASE("P4 polynomial and config loading") {
    CHECK(p4_eval(P4Coefficients{}, 5.0) == 0);
    P4Coefficients p;
    p.a4 = 1;
    CHECK(p4_eval(p, 2) == 16);
    const auto d = P4Coefficients::defaults();
    CHECK(d.a4 == doctest::Approx(1 / (2 * kPi * kPi)));
    CHECK(d.a2 == 0);

    const auto path = std::filesystem::temp_directory_path() / "zm_test_p4.cfg";
    {
      std::ofstream f(path);
      f << "# lower terms\na2 = 1.5\n a0=-2 # trailing\n";
    }
    const auto c = load_p4_config(path);
    CHECK(c.a2 == 1.5);
    CHECK(c.a0 == -2);
    CHECK(c.a4 == d.a4);
    {
      std::ofstream f(path);
      f << "a5 = 1\n";
    }
    CHECK_THROWS_AS(load_p4_config(path), ValidationError);
    {
      std::ofstream f(path);
      f << "a1 = x\n";
    }
    CHECK_THROWS_AS(load_p4_config(path), ValidationError);
    std::filesystem::remove(path);
  }
}
