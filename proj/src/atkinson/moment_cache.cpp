#include "zm/atkinson.hpp"

#include "zm/common.hpp"
#include "zm/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace zm {

MomentCache::MomentCache() : MomentCache([](double t) { return abs_zeta_pow(t, 1); }) {}

MomentCache::MomentCache(Integrand abs2) : f_(std::move(abs2)) {
  for (int k = 0; k < kMaxPower; ++k) {
    prefix_[k].push_back(0.0);
    err_prefix_[k].push_back(0.0);
  }
}

MomentCache& MomentCache::shared() {
  static MomentCache cache;
  return cache;
}

double MomentCache::panel_width(double start) {
  // zeros of zeta are ~2 pi / log(t / 2 pi) apart; 1.5 / log t keeps panels
  // well under a quarter of that
  return std::min(0.25, 1.5 / std::log(std::max(start, 2.0)));
}

std::array<double, MomentCache::kMaxPower> MomentCache::panel_sums(double a, double b, int nodes) const {
  const QuadratureRule& rule = gauss_legendre(nodes);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, kMaxPower> s{};
  for (int i = 0; i < nodes; ++i) {
    const double v = f_(mid + half * rule.nodes[i]);
    double p = rule.weights[i];
    for (int k = 0; k < kMaxPower; ++k) {
      p *= v;
      s[k] += p;
    }
  }
  for (auto& x : s) x *= half;
  return s;
}

void MomentCache::extend_to(double T) {
  if (edges_.back() >= T) return;
  std::vector<double> starts;
  double x = edges_.back();
  while (x < T) {
    starts.push_back(x);
    x += panel_width(x);
  }
  starts.push_back(x);  // closing edge
  const std::size_t count = starts.size() - 1;
  const std::size_t first_index = edges_.size() - 1;

  std::vector<std::array<double, kMaxPower>> sums(count);
  std::vector<std::array<double, kMaxPower>> errs(count);
  parallel_for(count, [&](std::size_t i) {
    sums[i] = panel_sums(starts[i], starts[i + 1], 8);
    errs[i] = {};
    if ((first_index + i) % kCheckEvery == 0) {
      const auto fine = panel_sums(starts[i], starts[i + 1], 16);
      for (int k = 0; k < kMaxPower; ++k) errs[i][k] = kCheckEvery * std::abs(fine[k] - sums[i][k]);
    }
  });

  // accumulate in panel order so the prefix values do not depend on threading
  for (std::size_t i = 0; i < count; ++i) {
    for (int k = 0; k < kMaxPower; ++k) {
      if (!std::isfinite(sums[i][k]))
        throw ComputationError("non-finite integrand on panel starting at t = " + std::to_string(starts[i]));
      running_[k] += sums[i][k];
      running_err_[k] += errs[i][k];
      prefix_[k].push_back(running_[k].value());
      err_prefix_[k].push_back(running_err_[k]);
    }
    edges_.push_back(starts[i + 1]);
  }
}

std::size_t MomentCache::panel_before(double T) const {
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), T);
  return static_cast<std::size_t>(it - edges_.begin()) - 1;
}

double MomentCache::integral(double T, int k) {
  require(k >= 1 && k <= kMaxPower, "moment power k must lie in [1, 4]");
  require(std::isfinite(T) && T >= 0, "integration limit must be finite and >= 0");
  std::lock_guard lock(mu_);
  extend_to(T);
  const std::size_t i = panel_before(T);
  double v = prefix_[k - 1][i];
  if (T > edges_[i]) v += panel_sums(edges_[i], T, 8)[k - 1];
  return v;
}

double MomentCache::error_estimate(double T, int k) {
  require(k >= 1 && k <= kMaxPower, "moment power k must lie in [1, 4]");
  require(std::isfinite(T) && T >= 0, "integration limit must be finite and >= 0");
  std::lock_guard lock(mu_);
  extend_to(T);
  return err_prefix_[k - 1][panel_before(T)];
}

double MomentCache::horizon() {
  std::lock_guard lock(mu_);
  return edges_.back();
}

}  // namespace zm
