#include "doctest.h"

#include "zm/common.hpp"
#include "zm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

using namespace zm;

namespace {
std::string error_of(std::string_view text) {
  try {
    parse_spectral(text, "test");
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

SpectralDataset synthetic(int n, std::uint64_t seed) {
  // Weyl-law spacing with jitter; values of either sign
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  std::vector<SpectralDatum> d;
  for (int j = 1; j <= n; ++j) d.push_back({std::sqrt(12.0 * j) + 0.1 * u(rng), 1 + u(rng)});
  std::sort(d.begin(), d.end(), [](auto& a, auto& b) { return a.kappa < b.kappa; });
  return make_spectral(d, "synthetic");
}
}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("parsing, comments and provenance") {
    const auto ds = parse_spectral("# source: hand-made\n# normalization: unit\n\n9.53 0.5  # first\n  12.17\t-1e-2\n", "x");
    REQUIRE(ds.data.size() == 2);
    CHECK(ds.data[1].kappa == 12.17);
    CHECK(ds.data[1].alphaH3 == -1e-2);
    CHECK(ds.max_kappa == 12.17);
    CHECK(ds.normalization == "unit");
    CHECK(ds.source.find("hand-made") != std::string::npos);
    CHECK(parse_spectral("", "e").data.empty());
  }

  TEST_CASE("errors carry the line number") {
    CHECK(error_of("5 1\n4 1\n").find("line 2") != std::string::npos);
    CHECK(error_of("1 2 3\n").find("line 1") != std::string::npos);
    CHECK(error_of("# c\n1 x\n").find("line 2") != std::string::npos);
    CHECK(error_of("-1 1\n").find("line 1") != std::string::npos);
    CHECK(error_of("1 nan\n").find("line 1") != std::string::npos);
    CHECK_THROWS_AS(load_spectral("/nonexistent/spectral.txt"), ValidationError);
  }

  TEST_CASE("write then load reproduces the data exactly") {
    auto ds = synthetic(50, 1);
    ds.normalization = "test";
    const auto path = std::filesystem::temp_directory_path() / "zm_spectral_rt.txt";
    write_spectral(ds, path);
    const auto back = load_spectral(path);
    REQUIRE(back.data.size() == ds.data.size());
    for (std::size_t i = 0; i < ds.data.size(); ++i) {
      CHECK(back.data[i].kappa == ds.data[i].kappa);
      CHECK(back.data[i].alphaH3 == ds.data[i].alphaH3);
    }
    CHECK(back.normalization == "test");
    std::filesystem::remove(path);
  }

  TEST_CASE("J2 series against a direct long double sum") {
    const double t = 1e4, G = 150;
    const double cutoff = j2_spectral_cutoff(t, G);
    const auto ds = synthetic(static_cast<int>(cutoff * cutoff / 12) + 50, 2);
    long double s = 0;
    std::int64_t used = 0;
    for (const auto& d : ds.data) {
      if (d.kappa > cutoff) break;
      const long double k = d.kappa;
      const long double x = G * k / t;
      s += d.alphaH3 / std::sqrt(k) * std::sin(k * std::log(k / (4 * std::exp(1.0L) * t))) * std::exp(-x * x / 4);
      ++used;
    }
    const auto m = j2_spectral(t, G, ds);
    CHECK(m.truncation == used);
    CHECK(m.value == doctest::Approx(static_cast<double>(3.14159265358979323846L / std::sqrt(2.0L * t) * s)).epsilon(1e-11));
    CHECK(m.k == 2);
  }

  TEST_CASE("window and coverage checks") {
    const auto ds = synthetic(100, 3);  // kappa up to ~35
    CHECK_THROWS_AS(j2_spectral(1e4, 150, ds), ValidationError);  // needs ~61
    CHECK_THROWS_AS(j2_spectral(1e4, 5, ds), ValidationError);     // below t^{1/2} / log t
    CHECK_THROWS_AS(j2_spectral(1e4, 2000, ds), ValidationError);  // above t / log t
    CHECK(j2_spectral(1e4, 150, make_spectral({}, "empty")).value == 0);
  }

  TEST_CASE("window sums") {
    const auto ds = make_spectral({{9.5, 1}, {10.2, 2}, {12.1, 4}}, "t");
    CHECK(spectral_window_sum(ds, 10) == 3);
    CHECK(spectral_window_sum(ds, 11.5) == 4);
    CHECK(spectral_window_sum(ds, 11.1) == 6);
    CHECK(spectral_window_sum(ds, 40) == 0);
    CHECK(spectral_window_sum(ds, 13.1) == 4);
    CHECK_THROWS_AS(spectral_window_sum(ds, 0.5), ValidationError);
  }

  TEST_CASE("quadruple counts against sorted pair sums") {
    const auto ds = synthetic(400, 4);
    const double K = 20;
    std::vector<long double> r;
    for (const auto& d : ds.data)
      if (d.kappa > K && d.kappa <= 2 * K) r.push_back(std::sqrt((long double)d.kappa * d.kappa + 0.25L));
    REQUIRE(r.size() <= 150);
    std::vector<long double> sums;
    for (auto a : r)
      for (auto b : r) sums.push_back(a + b);
    std::sort(sums.begin(), sums.end());
    std::uint64_t prev = 0;
    for (double delta : {1e-9, 1e-3, 0.05, 0.3}) {
      std::uint64_t want = 0;
      for (auto s : sums) {
        auto lo = std::upper_bound(sums.begin(), sums.end(), s - delta);
        auto hi = std::lower_bound(sums.begin(), sums.end(), s + delta);
        want += static_cast<std::uint64_t>(hi - lo);
      }
      const auto got = count_spectral_quadruples(ds, K, delta);
      CHECK(got == want);
      CHECK(got >= prev);
      prev = got;
    }
    const std::uint64_t n = r.size();
    CHECK(count_spectral_quadruples(ds, K, 1e-12) >= 2 * n * n - n);
    CHECK(count_spectral_quadruples(ds, K, 1e9) == n * n * n * n);
    CHECK_THROWS_AS(count_spectral_quadruples(synthetic(2000, 5), 60, 0.1), ValidationError);
  }

  TEST_CASE("shape reports") {
    const auto ds = synthetic(2000, 6);
    const double Ks[] = {20, 40, 80, 150};
    const auto p = spectral_partial_sum_shape(ds, Ks);
    CHECK(p.rows.size() == 4);
    CHECK(p.fitted_C > 0);
    const auto w = spectral_window_shape(ds, Ks);
    for (const auto& row : w.rows) CHECK(row.number("ratio") <= w.fitted_C);
  }
}
