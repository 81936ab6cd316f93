#include "doctest.h"

#include "zm/common.hpp"
#include "zm/kernels.hpp"
#include "zm/smoothed.hpp"

#include <cmath>

using namespace zm;

TEST_SUITE("smoothed") {
  TEST_CASE("Gaussian weights integrate to one") {
    const auto one = [](double) { return 1.0; };
    for (double t : {10.0, 1e3, 1e5})
      for (double G : {1.0, 7.5, 40.0}) {
        const auto m = jk_quadrature(t, G, 1, one);
        CHECK(std::abs(m.value - 1) <= 1e-12);
      }
    // reflection through |t| keeps the constant
    const auto r = jk_quadrature(10, 30, 3, one);
    CHECK(r.reflected);
    CHECK(std::abs(r.value - 1) <= 1e-12);
  }

  TEST_CASE("polynomial integrands give the Gaussian moments") {
    const auto lin = [](double x) { return x; };
    const double t = 5000, G = 12;
    // E[t + u] = t, E[(t + u)^2] = t^2 + G^2/2, E[(t+u)^3] = t^3 + 3 t G^2 / 2
    CHECK(jk_quadrature(t, G, 1, lin).value == doctest::Approx(t).epsilon(1e-12));
    CHECK(jk_quadrature(t, G, 2, lin).value == doctest::Approx(t * t + G * G / 2).epsilon(1e-12));
    CHECK(jk_quadrature(t, G, 3, lin).value == doctest::Approx(t * t * t + 1.5 * t * G * G).epsilon(1e-12));
  }

  TEST_CASE("field matches pointwise quadrature") {
    const SmoothedField f(2000, 2100, 6, 1);
    CHECK(f.values().size() == static_cast<std::size_t>(std::llround((f.hi() - f.lo()) / f.step())) + 1);
    for (std::size_t i : {std::size_t{0}, std::size_t{57}, f.values().size() - 1}) {
      const double q = jk_quadrature(f.node(i), 6, 1).value;
      CHECK(f.values()[i] == doctest::Approx(q).epsilon(1e-9));
    }
    // trapezoid of J^2 by hand
    double s = 0;
    const auto v = f.values();
    for (std::size_t i = 0; i < v.size(); ++i) s += (i == 0 || i + 1 == v.size() ? 0.5 : 1.0) * v[i] * v[i];
    CHECK(f.integral_of_power(2) == doctest::Approx(s * f.step()).epsilon(1e-13));
    const SmoothedField flat(100, 200, 150, 2, 0.25, [](double) { return 2.0; });
    CHECK(flat.integral_of_power(1) == doctest::Approx(400.0).epsilon(1e-12));
    CHECK_THROWS_AS(SmoothedField(100, 50, 5, 1), ValidationError);
  }

  TEST_CASE("series29: admissible cutoff, stability and closeness to quadrature") {
    const double t = 20000, G = std::pow(t, 0.3);
    const auto d = build_divisor_table(200000);
    const auto n0 = series29_min_cutoff(t, G);
    CHECK(n0 == static_cast<std::int64_t>(std::ceil(t / (G * G) * std::log(t))));
    CHECK_THROWS_AS(j1_series29(t, G, d, n0 - 1), ValidationError);
    const auto a = j1_series29(t, G, d);
    const auto b = j1_series29(t, G, d, 2 * n0);
    CHECK(a.truncation == n0);
    CHECK(std::abs(a.value - b.value) < 1e-3);
    const auto q = jk_quadrature(t, G, 1);
    CHECK(std::abs(q.value - a.value) / std::log(t) < 2.0);
  }

  TEST_CASE("series29 follows the oscillation of J_1 with the right sign") {
    // near t = 12648.6 zeta is large and J_1 is well above its mean
    const auto d = build_divisor_table(20000);
    for (double t : {1000.0, 9541.0, 12648.6}) {
      const double G = std::pow(t, 0.2);
      const double osc = jk_quadrature(t, G, 1).value - std::log(t / (2 * kPi)) - 2 * kEulerGamma;
      const double s = j1_series29(t, G, d).value;
      CHECK(osc * s > 0);
      CHECK(std::abs(osc - s) < 0.5 * std::abs(osc) + 1);
    }
  }

  TEST_CASE("series28: window, cutoff and agreement with series29") {
    const auto d = build_divisor_table(400000);
    const double t = 1e4;
    CHECK_THROWS_AS(j1_series28(t, std::pow(t, 0.2), d), ValidationError);
    CHECK_THROWS_AS(j1_series28(t, t, d), ValidationError);
    const double G = std::pow(t, 0.3);
    const auto n = series28_cutoff(t, G);
    CHECK(std::exp(-kPi * static_cast<double>(n) * G * G / (2 * t)) < 1e-16);
    CHECK(std::exp(-kPi * static_cast<double>(n - 2) * G * G / (2 * t)) >= 1e-16);
    const auto s28 = j1_series28(t, G, d);
    const auto s29 = j1_series29(t, G, d);
    CHECK(std::abs(s28.value - s29.value) < 1.0);
  }

  TEST_CASE("series terms share the Atkinson phase") {
    for (std::int64_t n : {1, 2, 17, 300}) {
      CHECK(series29_term(5000, 10, n, 2).phase == atkinson_f(5000, static_cast<double>(n)));
      CHECK(series28_term(5000, 10, n, 2).phase == atkinson_f(5000, static_cast<double>(n)));
    }
    CHECK(series29_term(5000, 10, 3, 0).amplitude == 0);
  }

  TEST_CASE("method names and residual sweeps") {
    for (auto m : {SmoothedMethod::quadrature, SmoothedMethod::series29, SmoothedMethod::series28,
                   SmoothedMethod::spectral})
      CHECK(parse_method(method_name(m)) == m);
    CHECK_THROWS_AS(parse_method("simpson"), ValidationError);
    const GridPoint g[] = {{1000, 8, 1}, {3000, 10, 1}};
    const auto s = j_residual_sweep(g, SmoothedMethod::quadrature, SmoothedMethod::quadrature, {});
    for (const auto& r : s.rows) CHECK(r.number("residual") == 0);
    CHECK_THROWS_AS(evaluate(SmoothedMethod::series29, g[0], {}), ValidationError);
    CHECK_THROWS_AS(evaluate(SmoothedMethod::series29, {1000, 8, 2}, {}), ValidationError);
  }
}
