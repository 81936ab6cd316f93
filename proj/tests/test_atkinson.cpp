#include "doctest.h"
#include "oracle.hpp"

#include "zm/atkinson.hpp"
#include "zm/common.hpp"

#include <cmath>

using namespace zm;

TEST_SUITE("atkinson") {
  TEST_CASE("sigma sums against 50-digit direct sums") {
    const auto d = build_divisor_table(4000);
    for (double T : {500.0, 3217.5}) {
      CHECK(sigma1(T, 1500, d) == doctest::Approx(oracle::sigma1(T, 1500)).epsilon(1e-11));
      CHECK(sigma1(T, 1500, d, Summation::naive) == doctest::Approx(oracle::sigma1(T, 1500)).epsilon(1e-9));
      const int Np = static_cast<int>(std::floor(atkinson_nprime(T, T)));
      CHECK(sigma2(T, Np, d) == doctest::Approx(oracle::sigma2(T, Np)).epsilon(1e-9));
    }
  }

  TEST_CASE("empty and single-term sums") {
    const auto d = build_divisor_table(8);
    const double T = 1234.5;
    CHECK(sigma1(T, 0.9, d) == 0);
    CHECK(sigma2(T, 0.9, d) == 0);
    CHECK(sigma1(T, 1, d) == doctest::Approx(-std::sqrt(2.0) * std::pow(T / kTwoPi, 0.25) * atkinson_e(T, 1) *
                                             std::cos(atkinson_f(T, 1))));
    const double L = std::log(T / kTwoPi);
    CHECK(sigma2(T, 1, d) == doctest::Approx(-2 / L * std::cos(T * L - T + kPi / 4)).epsilon(1e-9));
  }

  TEST_CASE("parameter window") {
    CHECK_NOTHROW(AtkinsonParams::make(1000, 500));
    CHECK_NOTHROW(AtkinsonParams::make(1000, 2000));
    CHECK_THROWS_AS(AtkinsonParams::make(1000, 499), ValidationError);
    CHECK_THROWS_AS(AtkinsonParams::make(1000, 2001), ValidationError);
    CHECK_THROWS_AS(AtkinsonParams::make(5, 5), ValidationError);
    const auto p = AtkinsonParams::make(1000, 1000);
    CHECK(p.Nprime == doctest::Approx(atkinson_nprime(1000, 1000)));
    const auto d = build_divisor_table(100);
    CHECK_THROWS_AS(sigma1(1000, 1000, d), ValidationError);  // table too short
  }

  TEST_CASE("moment cache with test integrands") {
    MomentCache one([](double) { return 1.0; });
    for (double T : {10.0, 123.4, 1000.0}) {
      CHECK(one.integral(T, 1) == doctest::Approx(T).epsilon(1e-14));
      CHECK(one.integral(T, 3) == doctest::Approx(T).epsilon(1e-14));
      CHECK(e_direct(T, {}, one) == doctest::Approx(T - mean_square_main_term(T)).epsilon(1e-13));
    }
    CHECK(one.error_estimate(1000, 1) <= 1e-12);

    // polynomial integrand: int_0^T (1 + u/100)^k du
    MomentCache lin([](double u) { return 1 + u / 100; });
    const double T = 777.0;
    for (int k = 1; k <= 4; ++k) {
      const double want = 100.0 / (k + 1) * (std::pow(1 + T / 100, k + 1) - 1);
      CHECK(lin.integral(T, k) == doctest::Approx(want).epsilon(1e-13));
    }
    // extending the grid leaves earlier values alone
    const double before = lin.integral(300, 2);
    lin.integral(5000, 2);
    CHECK(lin.integral(300, 2) == before);
    CHECK(lin.horizon() >= 5000);
    CHECK(lin.integral(0, 1) == 0);
  }

  TEST_CASE("quadrature and Atkinson's formula agree up to log^2 T") {
    const std::vector<double> heights = {1000, 4000};
    const auto rows = et_sweep(heights);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
      CHECK(r.residual == doctest::Approx(r.e_direct - r.e_atkinson));
      CHECK(r.e_atkinson == doctest::Approx(r.sigma1 + r.sigma2));
      CHECK(std::abs(r.residual) < 0.2 * std::pow(std::log(r.T), 2));
    }
    CHECK(rows[0].to_record().columns() == ETRecord::columns());
  }

  TEST_CASE("large-N finite check at T = 2 pi 1e3") {
    const double T = kTwoPi * 1e3;
    const auto d = build_divisor_table(atkinson_table_limit(T));
    const auto e = e_atkinson(T, T, d);
    CHECK(std::isfinite(e.e_atkinson));
    CHECK(std::isfinite(e.residual));
  }
}
