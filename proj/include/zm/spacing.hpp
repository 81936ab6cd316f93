#pragma once
// Exact counts for the square-root spacing problems
//   |sqrt m + sqrt n - sqrt k| <= delta sqrt M            (M < m <= 2M, M' < n <= 2M', k >= 1)
//   |n1^{1/k} + n2^{1/k} - n3^{1/k} - n4^{1/k}| < delta N^{1/k}   (N < n_i <= 2N)
// plus fits of the counts against their conjectured bound shapes.

#include "zm/record.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace zm {

struct TripleCountQuery {
  std::int64_t M = 1;
  std::int64_t Mprime = 1;  // Mprime <= M
  double delta = 0.0;
};

struct QuadCountQuery {
  std::int64_t N = 1;
  int k = 2;  // k >= 2
  double delta = 0.0;
};

struct CountResult {
  std::uint64_t count = 0;
  /// Tuples whose difference from the threshold vanished to 40 digits and
  /// were treated as exact equality (<= counts them, < does not).
  std::uint64_t ties = 0;
};

/// Enumerates every k in the window around (sqrt m + sqrt n)^2.
/// Requires M^2 M' <= 1e10.
CountResult count_triples_bruteforce(const TripleCountQuery& q);
/// Same count with O(1) work per (m, n): lattice points of [(s - c)^2, (s + c)^2]
/// with both ends re-checked exactly.
CountResult count_triples_fast(const TripleCountQuery& q);

/// All N^4 ordered quadruples; N <= 300.
CountResult count_quads_bruteforce(const QuadCountQuery& q);
/// Sorted unordered pair sums with multiplicities and a two-pointer sweep; N <= 4096.
CountResult count_quads_fast(const QuadCountQuery& q);

/// M^eps (M^2 M' delta + (M M')^{1/2}).
double triple_bound(const TripleCountQuery& q, double eps = 0.1);
/// N^eps (N^4 delta + N^2).
double quad_bound(const QuadCountQuery& q, double eps = 0.1);

struct BoundShapeFit {
  /// Columns family, parameters, count, bound_value, ratio, fitted_C, flagged.
  std::vector<ExperimentRecord> rows;
  double fitted_C = 0.0;     // smallest C with count <= C * bound on every query
  double spread = 0.0;       // max ratio / min ratio over queries with nonzero count
  double trend_slope = 0.0;  // slope of ratio / fitted_C against log of the size parameter
  std::size_t flagged = 0;   // queries exceeding 2 * prior_C (when prior_C > 0)
};

BoundShapeFit verify_triple_bounds(std::span<const TripleCountQuery> queries, double prior_C = 0.0,
                                   double eps = 0.1);
BoundShapeFit verify_quad_bounds(std::span<const QuadCountQuery> queries, double prior_C = 0.0, double eps = 0.1);

}  // namespace zm
