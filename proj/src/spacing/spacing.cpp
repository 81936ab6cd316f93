#include "zm/spacing.hpp"

#include "zm/common.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace zm {

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

// Differences within this of the threshold are re-decided at 50 digits.
constexpr long double kNearTie = 1e-12L;
const Big kExactTie("1e-40");

struct Decision {
  bool in = false;
  bool tie = false;
};

Big big_root(std::int64_t n, int k) {
  const Big x(n);
  if (k == 2) return sqrt(x);
  return exp(log(x) / k);
}

std::int64_t isqrt(std::int64_t v) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// Lemma 4 inequality, non-strict.
Decision triple_decide(std::int64_t m, std::int64_t n, std::int64_t k, const TripleCountQuery& q) {
  if (q.delta == 0) {
    // sqrt m + sqrt n = sqrt k  <=>  mn = r^2 and k = m + n + 2r
    const std::int64_t r = isqrt(m * n);
    return {r * r == m * n && k == m + n + 2 * r, false};
  }
  const long double d = std::abs(std::sqrt(static_cast<long double>(m)) + std::sqrt(static_cast<long double>(n)) -
                                 std::sqrt(static_cast<long double>(k))) -
                        static_cast<long double>(q.delta) * std::sqrt(static_cast<long double>(q.M));
  if (std::abs(d) > kNearTie) return {d < 0, false};
  const Big e = abs(big_root(m, 2) + big_root(n, 2) - big_root(k, 2)) - Big(q.delta) * big_root(q.M, 2);
  if (abs(e) > kExactTie) return {e < 0, false};
  return {true, true};
}

void check_triple(const TripleCountQuery& q) {
  require(q.M >= 1 && q.Mprime >= 1, "M and M' must be positive");
  require(q.Mprime <= q.M, "M' must not exceed M");
  require(std::isfinite(q.delta) && q.delta >= 0, "delta must be finite and >= 0");
  require(q.M <= 100000000, "M must not exceed 1e8");
}

struct Window {
  long double s, c;
};

Window triple_window(std::int64_t m, std::int64_t n, const TripleCountQuery& q) {
  return {std::sqrt(static_cast<long double>(m)) + std::sqrt(static_cast<long double>(n)),
          static_cast<long double>(q.delta) * std::sqrt(static_cast<long double>(q.M))};
}

}  // namespace

CountResult count_triples_bruteforce(const TripleCountQuery& q) {
  check_triple(q);
  const long double work = static_cast<long double>(q.M) * q.M * q.Mprime;
  if (work > 1e10L)
    throw ValidationError("brute-force triple count needs M^2 M' <= 1e10 (estimate " +
                          std::to_string(static_cast<double>(work)) + ")");
  std::vector<CountResult> per_m(q.M);
  parallel_for(static_cast<std::size_t>(q.M), [&](std::size_t i) {
    const std::int64_t m = q.M + 1 + static_cast<std::int64_t>(i);
    CountResult r;
    for (std::int64_t n = q.Mprime + 1; n <= 2 * q.Mprime; ++n) {
      const Window w = triple_window(m, n, q);
      const long double lo = std::max(0.0L, w.s - w.c);
      const auto k0 = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(lo * lo)) - 1);
      const auto k1 = static_cast<std::int64_t>(std::ceil((w.s + w.c) * (w.s + w.c))) + 1;
      for (std::int64_t k = k0; k <= k1; ++k) {
        const Decision d = triple_decide(m, n, k, q);
        r.count += d.in;
        r.ties += d.tie;
      }
    }
    per_m[i] = r;
  });
  CountResult total;
  for (const auto& r : per_m) {
    total.count += r.count;
    total.ties += r.ties;
  }
  return total;
}

CountResult count_triples_fast(const TripleCountQuery& q) {
  check_triple(q);
  std::vector<CountResult> per_m(q.M);
  parallel_for(static_cast<std::size_t>(q.M), [&](std::size_t i) {
    const std::int64_t m = q.M + 1 + static_cast<std::int64_t>(i);
    CountResult r;
    for (std::int64_t n = q.Mprime + 1; n <= 2 * q.Mprime; ++n) {
      if (q.delta == 0) {
        const std::int64_t s = isqrt(m * n);
        r.count += (s * s == m * n);
        continue;
      }
      const Window w = triple_window(m, n, q);
      const long double lo = std::max(0.0L, w.s - w.c);
      const auto est_lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(lo * lo)));
      const auto est_hi = static_cast<std::int64_t>(std::floor((w.s + w.c) * (w.s + w.c)));
      auto in = [&](std::int64_t k) { return k >= 1 && triple_decide(m, n, k, q).in; };
      // the admissible k form an interval; walk its ends onto the exact boundary
      std::int64_t a = est_lo;
      while (a > 1 && in(a - 1)) --a;
      while (a <= est_hi + 1 && !in(a)) ++a;
      if (!in(a)) continue;
      std::int64_t b = std::max(est_hi, a);
      while (in(b + 1)) ++b;
      while (b > a && !in(b)) --b;
      r.count += static_cast<std::uint64_t>(b - a + 1);
      r.ties += triple_decide(m, n, a, q).tie;
      if (b != a) r.ties += triple_decide(m, n, b, q).tie;
    }
    per_m[i] = r;
  });
  CountResult total;
  for (const auto& r : per_m) {
    total.count += r.count;
    total.ties += r.ties;
  }
  return total;
}

namespace {

void check_quad(const QuadCountQuery& q) {
  require(q.N >= 1, "N must be positive");
  require(q.k >= 2, "k must be >= 2");
  require(std::isfinite(q.delta) && q.delta >= 0, "delta must be finite and >= 0");
}

struct QuadContext {
  const QuadCountQuery& q;
  std::vector<long double> root;  // root[i] = (N + 1 + i)^{1/k}
  long double c;                  // delta N^{1/k}
  Big c_big;

  explicit QuadContext(const QuadCountQuery& query) : q(query) {
    root.resize(q.N);
    for (std::int64_t i = 0; i < q.N; ++i) {
      const auto v = static_cast<long double>(q.N + 1 + i);
      root[i] = q.k == 2 ? std::sqrt(v) : q.k == 3 ? std::cbrt(v) : std::pow(v, 1.0L / q.k);
    }
    const auto nn = static_cast<long double>(q.N);
    c = static_cast<long double>(q.delta) * (q.k == 2 ? std::sqrt(nn) : std::pow(nn, 1.0L / q.k));
    c_big = Big(q.delta) * big_root(q.N, q.k);
  }

  // strict inequality on indices into root[]
  Decision exact(std::size_t a, std::size_t b, std::size_t x, std::size_t y) const {
    const auto n = [&](std::size_t i) { return q.N + 1 + static_cast<std::int64_t>(i); };
    const Big e = abs(big_root(n(a), q.k) + big_root(n(b), q.k) - big_root(n(x), q.k) - big_root(n(y), q.k)) - c_big;
    if (abs(e) > kExactTie) return {e < 0, false};
    return {false, true};
  }

  Decision decide(std::size_t a, std::size_t b, std::size_t x, std::size_t y) const {
    const long double d = std::abs(root[a] + root[b] - root[x] - root[y]) - c;
    if (std::abs(d) > kNearTie) return {d < 0, false};
    return exact(a, b, x, y);
  }
};

}  // namespace

CountResult count_quads_bruteforce(const QuadCountQuery& q) {
  check_quad(q);
  require(q.N <= 300, "brute-force quadruple count needs N <= 300");
  const QuadContext ctx(q);
  const auto N = static_cast<std::size_t>(q.N);
  std::vector<CountResult> per_a(N);
  parallel_for(N, [&](std::size_t a) {
    CountResult r;
    for (std::size_t b = 0; b < N; ++b)
      for (std::size_t x = 0; x < N; ++x)
        for (std::size_t y = 0; y < N; ++y) {
          const Decision d = ctx.decide(a, b, x, y);
          r.count += d.in;
          r.ties += d.tie;
        }
    per_a[a] = r;
  });
  CountResult total;
  for (const auto& r : per_a) {
    total.count += r.count;
    total.ties += r.ties;
  }
  return total;
}

CountResult count_quads_fast(const QuadCountQuery& q) {
  check_quad(q);
  require(q.N <= 4096, "pair-sum quadruple count needs N <= 4096");
  const QuadContext ctx(q);
  const auto N = static_cast<std::size_t>(q.N);

  struct PairSum {
    long double v;
    std::uint16_t a, b;  // a <= b
  };
  std::vector<PairSum> pairs;
  pairs.reserve(N * (N + 1) / 2);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = a; b < N; ++b)
      pairs.push_back({ctx.root[a] + ctx.root[b], static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b)});
  // (sum, index) order: ties in value keep generation order
  std::stable_sort(pairs.begin(), pairs.end(), [](const PairSum& x, const PairSum& y) { return x.v < y.v; });

  const std::size_t P = pairs.size();
  auto weight = [&](std::size_t i) -> std::uint64_t { return pairs[i].a == pairs[i].b ? 1 : 2; };
  std::vector<std::uint64_t> prefix(P + 1, 0);
  for (std::size_t i = 0; i < P; ++i) prefix[i + 1] = prefix[i] + weight(i);

  const long double c = ctx.c;
  const bool sure_exists = c > kNearTie;
  CountResult total;
  // zone_lo <= sure_lo <= sure_hi <= zone_hi, all monotone in i:
  //   [zone_lo, sure_lo)  : v_j in (v_i - c - eps, v_i - c + eps]   decided exactly
  //   [sure_lo, sure_hi)  : |v_j - v_i| < c - eps                   counted directly
  //   [sure_hi, zone_hi)  : v_j in [v_i + c - eps, v_i + c + eps]   decided exactly
  std::size_t zone_lo = 0, sure_lo = 0, sure_hi = 0, zone_hi = 0;
  for (std::size_t i = 0; i < P; ++i) {
    const long double v = pairs[i].v;
    while (zone_lo < P && pairs[zone_lo].v <= v - c - kNearTie) ++zone_lo;
    while (zone_hi < P && pairs[zone_hi].v <= v + c + kNearTie) ++zone_hi;
    std::uint64_t inner = 0;
    std::uint64_t ties = 0;
    auto exact_range = [&](std::size_t from, std::size_t to) {
      for (std::size_t j = from; j < to; ++j) {
        Decision d;
        if (j == i)
          d = c > 0 ? Decision{true, false} : Decision{false, true};  // identical pair: difference is 0
        else
          d = ctx.exact(pairs[i].a, pairs[i].b, pairs[j].a, pairs[j].b);
        if (d.in) inner += weight(j);
        if (d.tie) ties += weight(j);
      }
    };
    if (sure_exists) {
      while (sure_lo < P && pairs[sure_lo].v <= v - c + kNearTie) ++sure_lo;
      while (sure_hi < P && pairs[sure_hi].v < v + c - kNearTie) ++sure_hi;
      sure_lo = std::max(sure_lo, zone_lo);
      sure_hi = std::max(sure_hi, sure_lo);
      inner += prefix[sure_hi] - prefix[sure_lo];
      exact_range(zone_lo, sure_lo);
      exact_range(sure_hi, zone_hi);
    } else {
      exact_range(zone_lo, zone_hi);
    }
    total.count += weight(i) * inner;
    total.ties += weight(i) * ties;
  }
  return total;
}

double triple_bound(const TripleCountQuery& q, double eps) {
  const double M = static_cast<double>(q.M), Mp = static_cast<double>(q.Mprime);
  return std::pow(M, eps) * (M * M * Mp * q.delta + std::sqrt(M * Mp));
}

double quad_bound(const QuadCountQuery& q, double eps) {
  const double N = static_cast<double>(q.N);
  return std::pow(N, eps) * (N * N * N * N * q.delta + N * N);
}

namespace {

BoundShapeFit finish_fit(std::vector<ExperimentRecord> rows, const std::vector<double>& size,
                         const std::vector<double>& ratio, double prior_C) {
  BoundShapeFit fit;
  fit.fitted_C = *std::max_element(ratio.begin(), ratio.end());
  double lo = 0;
  for (double r : ratio)
    if (r > 0) lo = lo == 0 ? r : std::min(lo, r);
  fit.spread = lo > 0 ? fit.fitted_C / lo : 0.0;
  if (fit.fitted_C > 0 && std::any_of(size.begin(), size.end(), [&](double s) { return s != size.front(); })) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < size.size(); ++i) {
      x.push_back(std::log(size[i]));
      y.push_back(ratio[i] / fit.fitted_C);
    }
    fit.trend_slope = linear_fit(x, y).slope;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const bool flag = prior_C > 0 && ratio[i] > 2 * prior_C;
    fit.flagged += flag;
    rows[i].set("fitted_C", fit.fitted_C).set("flagged", flag ? 1 : 0);
  }
  fit.rows = std::move(rows);
  return fit;
}

}  // namespace

BoundShapeFit verify_triple_bounds(std::span<const TripleCountQuery> queries, double prior_C, double eps) {
  require(!queries.empty(), "no triple queries");
  std::vector<ExperimentRecord> rows;
  std::vector<double> size, ratio;
  for (const auto& q : queries) {
    const CountResult c = count_triples_fast(q);
    const double b = triple_bound(q, eps);
    ExperimentRecord r;
    r.set("family", "triples");
    r.set("parameters", "M=" + std::to_string(q.M) + ";Mprime=" + std::to_string(q.Mprime) +
                            ";delta=" + format_double(q.delta));
    r.set("count", Field(static_cast<std::int64_t>(c.count))).set("bound_value", b);
    r.set("ratio", static_cast<double>(c.count) / b);
    rows.push_back(std::move(r));
    size.push_back(static_cast<double>(q.M));
    ratio.push_back(static_cast<double>(c.count) / b);
  }
  return finish_fit(std::move(rows), size, ratio, prior_C);
}

BoundShapeFit verify_quad_bounds(std::span<const QuadCountQuery> queries, double prior_C, double eps) {
  require(!queries.empty(), "no quadruple queries");
  std::vector<ExperimentRecord> rows;
  std::vector<double> size, ratio;
  for (const auto& q : queries) {
    const CountResult c = count_quads_fast(q);
    const double b = quad_bound(q, eps);
    ExperimentRecord r;
    r.set("family", "quads");
    r.set("parameters",
          "N=" + std::to_string(q.N) + ";k=" + std::to_string(q.k) + ";delta=" + format_double(q.delta));
    r.set("count", Field(static_cast<std::int64_t>(c.count))).set("bound_value", b);
    r.set("ratio", static_cast<double>(c.count) / b);
    rows.push_back(std::move(r));
    size.push_back(static_cast<double>(q.N));
    ratio.push_back(static_cast<double>(c.count) / b);
  }
  return finish_fit(std::move(rows), size, ratio, prior_C);
}

}  // namespace zm
