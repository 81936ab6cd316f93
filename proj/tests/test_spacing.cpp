#include "doctest.h"

#include "zm/common.hpp"
#include "zm/spacing.hpp"

#include <cmath>
#include <map>
#include <random>
#include <vector>

using namespace zm;

namespace {

// n = q s^2 with q squarefree
std::pair<std::int64_t, std::int64_t> kernel(std::int64_t n) {
  std::int64_t q = 1, s = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) s *= p;
    if (e % 2) q *= p;
  }
  return {q * n, s};
}

// Square roots of distinct squarefree numbers are linearly independent over Q,
// so sqrt a + sqrt b = sqrt c + sqrt d iff their kernel expansions coincide.
std::uint64_t exact_coincidences(std::int64_t N) {
  std::map<std::map<std::int64_t, std::int64_t>, std::uint64_t> classes;
  for (std::int64_t a = N + 1; a <= 2 * N; ++a)
    for (std::int64_t b = N + 1; b <= 2 * N; ++b) {
      std::map<std::int64_t, std::int64_t> v;
      const auto [qa, sa] = kernel(a);
      const auto [qb, sb] = kernel(b);
      v[qa] += sa;
      v[qb] += sb;
      ++classes[v];
    }
  std::uint64_t total = 0;
  for (const auto& [_, c] : classes) total += c * c;
  return total;
}

}  // namespace

TEST_SUITE("spacing") {
  TEST_CASE("triples: fast equals brute force on random instances") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; ++i) {
      const std::int64_t M = std::uniform_int_distribution<std::int64_t>(1, 150)(rng);
      const std::int64_t Mp = std::uniform_int_distribution<std::int64_t>(1, M)(rng);
      const double delta = i % 5 == 0 ? 0.0 : std::pow(10.0, std::uniform_real_distribution<double>(-7, 0)(rng));
      const TripleCountQuery q{M, Mp, delta};
      const auto a = count_triples_bruteforce(q), b = count_triples_fast(q);
      REQUIRE(a.count == b.count);
      CHECK(a.ties == b.ties);
    }
  }

  TEST_CASE("triples: exact cases") {
    CHECK(count_triples_fast({1, 1, 0.0}).count == 1);
    CHECK(count_triples_fast({4, 1, 0.0}).count >= 1);  // sqrt 8 + sqrt 2 = sqrt 18
    // delta = 0: one k per (m, n) with m n a perfect square
    std::uint64_t squares = 0;
    for (std::int64_t m = 41; m <= 80; ++m)
      for (std::int64_t n = 21; n <= 40; ++n) {
        const auto r = static_cast<std::int64_t>(std::llround(std::sqrt(double(m * n))));
        squares += r * r == m * n;
      }
    CHECK(count_triples_fast({40, 20, 0.0}).count == squares);
    std::uint64_t prev = 0;
    for (double d : {0.0, 1e-5, 1e-3, 1e-1, 1.0}) {
      const auto c = count_triples_fast({60, 30, d}).count;
      CHECK(c >= prev);
      prev = c;
    }
    CHECK_THROWS_AS(count_triples_bruteforce({5000, 5000, 0.1}), ValidationError);
    CHECK_THROWS_AS(count_triples_fast({5, 6, 0.1}), ValidationError);
  }

  TEST_CASE("quads: fast equals brute force on random instances") {
    std::mt19937_64 rng(1234);
    for (int i = 0; i < 200; ++i) {
      const std::int64_t N = std::uniform_int_distribution<std::int64_t>(1, 40)(rng);
      const int k = std::uniform_int_distribution<int>(2, 4)(rng);
      const double delta = i % 7 == 0 ? 0.0 : std::pow(10.0, std::uniform_real_distribution<double>(-7, 0)(rng));
      const QuadCountQuery q{N, k, delta};
      const auto a = count_quads_bruteforce(q), b = count_quads_fast(q);
      REQUIRE(a.count == b.count);
      CHECK(a.ties == b.ties);
    }
  }

  TEST_CASE("quads: k = 2 below the minimal gap counts exact coincidences") {
    for (std::int64_t N : {6, 15, 30, 48}) {
      const auto want = exact_coincidences(N);
      CHECK(count_quads_fast({N, 2, 1e-13}).count == want);
      CHECK(count_quads_bruteforce({N, 2, 1e-13}).count == want);
    }
  }

  TEST_CASE("quads: saturation, diagonal and the single tuple") {
    const std::uint64_t N = 25;
    CHECK(count_quads_fast({25, 3, 1e6}).count == N * N * N * N);
    CHECK(count_quads_fast({25, 3, 1e-9}).count >= 2 * N * N - N);
    CHECK(count_quads_fast({1, 2, 1e-3}).count == 1);
    CHECK(count_quads_bruteforce({1, 5, 2.0}).count == 1);
    CHECK_THROWS_AS(count_quads_bruteforce({301, 2, 0.1}), ValidationError);
    CHECK_THROWS_AS(count_quads_fast({20, 1, 0.1}), ValidationError);
  }

  TEST_CASE("bound-shape fits on doubling ladders") {
    std::vector<QuadCountQuery> qs;
    for (std::int64_t N : {20, 40, 80, 160}) qs.push_back({N, 2, 1.0 / double(N * N)});
    const auto qf = verify_quad_bounds(qs);
    CHECK(qf.rows.size() == 4);
    CHECK(qf.spread <= 2.0);
    CHECK(qf.flagged == 0);
    for (const auto& r : qf.rows) CHECK(r.number("count") <= qf.fitted_C * r.number("bound_value") * (1 + 1e-12));

    std::vector<TripleCountQuery> ts;
    for (std::int64_t M : {25, 50, 100, 200, 400}) ts.push_back({M, M, 0.0});
    const auto tf = verify_triple_bounds(ts);
    CHECK(tf.spread <= 2.0);

    // a prior far below the data flags everything; saturated queries never flag
    CHECK(verify_quad_bounds(qs, qf.fitted_C / 10).flagged == qs.size());
    const QuadCountQuery sat[] = {{8, 2, 1e6}, {16, 2, 1e6}};
    CHECK(verify_quad_bounds(sat, 1.0).flagged == 0);
  }

  TEST_CASE("bound formulas") {
    CHECK(triple_bound({100, 50, 0.0}, 0.0) == doctest::Approx(std::sqrt(5000.0)));
    CHECK(quad_bound({10, 2, 0.5}, 0.0) == doctest::Approx(5000.0 + 100.0));
  }
}
