#include "zm/spectral.hpp"

#include "zm/common.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace zm {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string at_line(std::size_t line) { return "spectral data line " + std::to_string(line) + ": "; }

double parse_number(std::string_view tok, std::size_t line) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || end != tok.data() + tok.size())
    throw ValidationError(at_line(line) + "cannot parse '" + std::string(tok) + "' as a number");
  return v;
}

void check_datum(const SpectralDatum& d, const SpectralDatum* prev, std::size_t line) {
  if (!std::isfinite(d.kappa) || d.kappa <= 0) throw ValidationError(at_line(line) + "kappa must be finite and > 0");
  if (!std::isfinite(d.alphaH3)) throw ValidationError(at_line(line) + "alphaH3 must be finite");
  if (prev && !(d.kappa > prev->kappa)) throw ValidationError(at_line(line) + "kappa values must strictly increase");
}

}  // namespace

SpectralDataset parse_spectral(std::string_view text, std::string source) {
  SpectralDataset ds;
  ds.source = std::move(source);
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    const auto hash = line.find('#');
    if (hash != std::string_view::npos) {
      const std::string_view comment = trim(line.substr(hash + 1));
      for (std::string_view key : {"source:", "normalization:"}) {
        if (comment.substr(0, key.size()) == key) {
          const std::string value(trim(comment.substr(key.size())));
          if (key == "normalization:")
            ds.normalization = value;
          else if (!value.empty())
            ds.source += " (" + value + ")";
        }
      }
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    std::vector<std::string_view> tok;
    while (!line.empty()) {
      const auto sp = line.find_first_of(" \t");
      tok.push_back(line.substr(0, sp));
      line = sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp));
    }
    if (tok.size() != 2)
      throw ValidationError(at_line(line_no) + "expected 2 fields (kappa alphaH3), found " +
                            std::to_string(tok.size()));
    const SpectralDatum d{parse_number(tok[0], line_no), parse_number(tok[1], line_no)};
    check_datum(d, ds.data.empty() ? nullptr : &ds.data.back(), line_no);
    ds.data.push_back(d);
  }
  ds.max_kappa = ds.data.empty() ? 0.0 : ds.data.back().kappa;
  return ds;
}

SpectralDataset load_spectral(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open spectral data file '" + path.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_spectral(ss.str(), path.string());
}

SpectralDataset make_spectral(std::vector<SpectralDatum> data, std::string source) {
  for (std::size_t i = 0; i < data.size(); ++i) check_datum(data[i], i ? &data[i - 1] : nullptr, i + 1);
  SpectralDataset ds;
  ds.data = std::move(data);
  ds.source = std::move(source);
  ds.max_kappa = ds.data.empty() ? 0.0 : ds.data.back().kappa;
  return ds;
}

void write_spectral(const SpectralDataset& ds, const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw ComputationError("cannot open '" + path.string() + "' for writing");
  if (!ds.normalization.empty()) f << "# normalization: " << ds.normalization << '\n';
  f << "# kappa alphaH3\n";
  for (const auto& d : ds.data) f << format_double(d.kappa) << ' ' << format_double(d.alphaH3) << '\n';
  if (!f) throw ComputationError("write failed for '" + path.string() + "'");
}

double j2_spectral_cutoff(double t, double G) { return t / G * std::log(t); }

SmoothedMoment j2_spectral(double t, double G, const SpectralDataset& ds, double D, double cutoff_scale) {
  require(std::isfinite(t) && t > 1 && std::isfinite(G) && G > 0, "j2_spectral needs t > 1 and G > 0");
  require(D > 0, "D must be positive");
  require(cutoff_scale >= 1, "cutoff scale must be >= 1");
  const double L = std::log(t);
  const double g_lo = std::sqrt(t) / std::pow(L, D);
  const double g_hi = t / L;
  if (G < g_lo || G > g_hi)
    throw ValidationError("j2_spectral needs t^{1/2} log^{-D} t <= G <= t / log t, i.e. G in [" +
                          std::to_string(g_lo) + ", " + std::to_string(g_hi) + "]");
  const double cutoff = cutoff_scale * j2_spectral_cutoff(t, G);
  if (!ds.data.empty() && ds.max_kappa < cutoff)
    throw ValidationError("insufficient spectral coverage: data reach kappa = " + std::to_string(ds.max_kappa) +
                          ", the series needs kappa up to " + std::to_string(cutoff));
  CompensatedSum s;
  std::int64_t used = 0;
  for (const auto& d : ds.data) {
    if (d.kappa > cutoff) break;
    const double x = G * d.kappa / t;
    s += d.alphaH3 / std::sqrt(d.kappa) * std::sin(d.kappa * (std::log(d.kappa / (4.0 * t)) - 1.0)) *
         std::exp(-0.25 * x * x);
    ++used;
  }
  SmoothedMoment r;
  r.k = 2;
  r.t = t;
  r.G = G;
  r.value = kPi / std::sqrt(2.0 * t) * s.value();
  r.method = SmoothedMethod::spectral;
  r.truncation = used;
  return r;
}

double spectral_window_sum(const SpectralDataset& ds, double K) {
  require(K >= 1, "window centre K must be >= 1");
  const auto lo = std::lower_bound(ds.data.begin(), ds.data.end(), K - 1,
                                   [](const SpectralDatum& d, double v) { return d.kappa < v; });
  double s = 0.0;
  for (auto it = lo; it != ds.data.end() && it->kappa <= K + 1; ++it) s += it->alphaH3;
  return s;
}

std::uint64_t count_spectral_quadruples(const SpectralDataset& ds, double K, double delta) {
  require(delta > 0, "delta must be positive");
  std::vector<double> r;
  for (const auto& d : ds.data)
    if (d.kappa > K && d.kappa <= 2 * K) r.push_back(std::sqrt(d.kappa * d.kappa + 0.25));
  require(r.size() <= 150, "quadruple enumeration is limited to 150 spectral points in (K, 2K]");
  std::uint64_t count = 0;
  for (double a : r)
    for (double b : r)
      for (double c : r)
        for (double d : r)
          if (std::abs(a + b - c - d) < delta) ++count;
  return count;
}

namespace {

template <class Value, class Shape>
ShapeReport shape_report(std::span<const double> K_grid, Value value, Shape shape) {
  require(!K_grid.empty(), "K grid is empty");
  ShapeReport rep;
  std::vector<double> x, y;
  for (double K : K_grid) {
    const double v = value(K);
    const double b = shape(K);
    const double ratio = v / b;
    ExperimentRecord row;
    row.set("K", K).set("value", v).set("shape", b).set("ratio", ratio);
    rep.rows.push_back(std::move(row));
    rep.fitted_C = std::max(rep.fitted_C, ratio);
    x.push_back(std::log(K));
    y.push_back(ratio);
  }
  if (std::any_of(x.begin(), x.end(), [&](double v) { return v != x.front(); })) {
    rep.trend_slope = linear_fit(x, y).slope;
    rep.flagged = rep.fitted_C > 0 && rep.trend_slope > 0.1 * rep.fitted_C;
  }
  return rep;
}

}  // namespace

ShapeReport spectral_partial_sum_shape(const SpectralDataset& ds, std::span<const double> K_grid) {
  for (double K : K_grid) require(K > 1, "partial-sum shape needs K > 1");
  return shape_report(
      K_grid,
      [&](double K) {
        double s = 0.0;
        for (const auto& d : ds.data) {
          if (d.kappa > K) break;
          s += d.alphaH3;
        }
        return s;
      },
      [](double K) { return K * K * std::pow(std::log(K), 3); });
}

ShapeReport spectral_window_shape(const SpectralDataset& ds, std::span<const double> K_grid, double eps) {
  return shape_report(
      K_grid, [&](double K) { return spectral_window_sum(ds, K); },
      [eps](double K) { return std::pow(K, 1 + eps); });
}

}  // namespace zm
