#include "doctest.h"

#include "zm/atkinson.hpp"
#include "zm/common.hpp"
#include "zm/experiments.hpp"
#include "zm/smoothed.hpp"
#include "zm/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace zm;

TEST_SUITE("experiments") {
  TEST_CASE("I_k basics") {
    for (int k = 1; k <= 4; ++k) CHECK(i_k(0, k) == 0);
    for (double T : {100.0, 2500.0})
      CHECK(std::abs(i_k(T, 1) - mean_square_main_term(T) - e_direct(T)) <= 1e-6);
    CHECK(i_k(3000, 2) > i_k(2000, 2));
    CHECK_THROWS_AS(i_k(2e5, 2), ValidationError);
    CHECK_THROWS_AS(i_k(100, 5), ValidationError);
    CHECK_THROWS_AS(i_k(-1, 1), ValidationError);
  }

  TEST_CASE("exceedance measure") {
    const double T = 300, G = 3;
    const SmoothedField f(T, 2 * T, G, 1, 0.05);
    const double vmin = *std::min_element(f.values().begin(), f.values().end());
    const double vmax = *std::max_element(f.values().begin(), f.values().end());
    const double U[] = {0.0, vmin, 1.0, 2.0, 0.5 * vmax, vmax * 1.01};
    const auto r = exceedance_measure(T, G, 1, U);
    CHECK(r[0].second == doctest::Approx(T).epsilon(1e-12));
    CHECK(r[1].second == doctest::Approx(T).epsilon(1e-12));
    CHECK(r.back().second == 0);
    for (std::size_t i = 2; i < r.size(); ++i) CHECK(r[i].second <= r[i - 1].second);
  }

  TEST_CASE("large values: invariants replayed") {
    const auto lv = large_value_points(1000, 2.5);
    REQUIRE(lv.R > 0);
    CHECK(lv.points.size() == static_cast<std::size_t>(lv.R));
    for (std::size_t i = 0; i < lv.points.size(); ++i) {
      CHECK(lv.points[i] >= 1000);
      CHECK(lv.points[i] <= 2000);
      CHECK(std::abs(hardy_z(lv.points[i])) >= 2.5);
      CHECK(std::abs(hardy_z(lv.points[i])) == doctest::Approx(lv.values[i]));
      if (i) CHECK(lv.points[i] - lv.points[i - 1] >= 1);
    }
    // deterministic and nested
    CHECK(large_value_points(1000, 2.5).points == lv.points);
    CHECK(large_value_points(1000, 4).R <= lv.R);
  }

  TEST_CASE("large values: threshold extremes") {
    double peak = 0;
    for (double t = 1000; t <= 2000; t += 0.01) peak = std::max(peak, std::abs(hardy_z(t)));
    CHECK(large_value_points(1000, peak * 1.05).R == 0);
    CHECK(large_value_points(1000, 0.1).R >= 1);
    // refined maxima are at least as high as the sampled maximum
    const auto top = large_value_points(1000, peak * 0.999);
    REQUIRE(top.R >= 1);
    CHECK(*std::max_element(top.values.begin(), top.values.end()) >= peak * (1 - 1e-12));
  }

  TEST_CASE("greedy cover") {
    const double pts[] = {0.0, 1.0, 2.0, 10.0, 10.5, 30.0};
    CHECK(greedy_cover_count(pts, 2.0) == 3);   // [-1/3, 11/3], [29/3, ...], [..30]
    CHECK(greedy_cover_count(pts, 100.0) == 1);
    CHECK(greedy_cover_count({}, 2.0) == 0);
  }

  TEST_CASE("large-value pipeline: ranges and flags") {
    const double V[] = {1.0, 2.0, 3.0};
    const auto rep = theorem4_pipeline(500, 1, 2, 0.0, V);
    CHECK(rep.rows[0].flagged);
    CHECK_FALSE(rep.rows[1].flagged);
    CHECK(rep.fitted_C == std::max(rep.rows[1].shape, rep.rows[2].shape));
    CHECK(rep.G == doctest::Approx(std::pow(500.0, 0.05)));
    CHECK(rep.moment == doctest::Approx(i_k(500, 2)));
    CHECK(rep.implied_ratio == doctest::Approx(rep.moment / std::pow(500.0, 1.05)));
    CHECK(rep.records().size() == 3);
    CHECK(rep.to_json().find("\"fitted_C\"") != std::string::npos);
    CHECK_THROWS_AS(theorem4_pipeline(500, 1, 3, 0.1, V), ValidationError);
    CHECK_THROWS_AS(theorem4_pipeline(500, 2, 2, 0.4, V), ValidationError);
    CHECK_THROWS_AS(theorem4_pipeline(500, 2, 3, 0.6, V), ValidationError);
    CHECK_NOTHROW(theorem4_pipeline(500, 1, 4, 0.2, V));
  }

  TEST_CASE("pointwise inequality: one constant, stable under extension") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> lo(std::log(1e2), std::log(1e4)), hi(std::log(1e4), std::log(1e5));
    std::vector<double> a, b;
    for (int i = 0; i < 200; ++i) {
      a.push_back(std::exp(lo(rng)));
      b.push_back(std::exp(hi(rng)));
    }
    const auto ra = pointwise_convexity_check(a, 1);
    const auto rb = pointwise_convexity_check(b, 1);
    MESSAGE("C on [1e2, 1e4]: " << ra.fitted_C << ", on [1e4, 1e5]: " << rb.fitted_C);
    CHECK(ra.fitted_C > 0);
    CHECK(rb.fitted_C <= 2 * ra.fitted_C);
    CHECK(rb.fitted_C >= 0.5 * ra.fitted_C);
    const double zero[] = {14.134725141734693};
    CHECK(pointwise_convexity_check(zero, 2).fitted_C < 1e-9);
    CHECK_THROWS_AS(pointwise_convexity_check(a, 3), ValidationError);
  }

  TEST_CASE("moment sweep bookkeeping") {
    MomentSweepConfig cfg;
    cfg.k = 1;
    cfg.m = 2;
    cfg.theta = 0.3;
    cfg.T_grid = {500, 1000};
    const auto s = moment_of_jk(cfg);
    REQUIRE(s.rows.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      const double T = cfg.T_grid[i];
      const SmoothedField f(T, 2 * T, std::pow(T, 0.3), 1);
      CHECK(s.rows[i].number("integral") == doctest::Approx(f.integral_of_power(2)));
      CHECK(s.ratios[i] == doctest::Approx(f.integral_of_power(2) / std::pow(T, 1.05)));
    }
    CHECK(s.non_increasing == (s.ratios[1] <= s.ratios[0]));
    cfg.m = 5;
    CHECK_THROWS_AS(moment_of_jk(cfg), ValidationError);
  }

  TEST_CASE("P4 calibration keeps the leading coefficients") {
    const double Ts[] = {1000, 2000, 4000, 8000};
    const auto cal = calibrate_p4(Ts);
    const auto d = P4Coefficients::defaults();
    CHECK(cal.coeffs.a4 == d.a4);
    CHECK(cal.coeffs.a3 == d.a3);
    CHECK(cal.rows.size() == 4);
    for (const auto& r : cal.rows)
      CHECK(r.number("residual") ==
            doctest::Approx(r.number("I2") - r.number("T") * p4_eval(cal.coeffs, std::log(r.number("T")))));
    // four heights and three free coefficients: the fit is exact up to one degree of freedom
    CHECK(cal.fitted_C < 100);
    const double two[] = {1000, 2000};
    CHECK_THROWS_AS(calibrate_p4(two), ValidationError);
  }
}
