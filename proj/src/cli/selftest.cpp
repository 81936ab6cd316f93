// Fast invariant checks across every module: exact identities, empty and
// saturated cases, format contracts.

#include "zm/atkinson.hpp"
#include "zm/cli.hpp"
#include "zm/common.hpp"
#include "zm/experiments.hpp"
#include "zm/kernels.hpp"
#include "zm/record.hpp"
#include "zm/smoothed.hpp"
#include "zm/spacing.hpp"
#include "zm/spectral.hpp"
#include "zm/zeta.hpp"

#include "json.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

namespace zm {

namespace {

struct Check {
  const char* module;
  const char* what;
  std::function<bool()> run;
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<Check> checks() {
  std::vector<Check> c;

  // kernels
  c.push_back({"kernels", "d(1) = 1", [] {
                 const auto d = build_divisor_table(1);
                 return d.limit() == 1 && d[1] == 1;
               }});
  c.push_back({"kernels", "d(12) = 6", [] { return build_divisor_table(12)[12] == 6; }});
  c.push_back({"kernels", "f(2 pi, 1) by substitution", [] {
                 const double want = 4 * kPi * std::log((1 + std::sqrt(5.0)) / 2) + std::sqrt(5 * kPi * kPi) - kPi / 4;
                 return near(atkinson_f(kTwoPi, 1), want, 1e-14);
               }});
  c.push_back({"kernels", "N'(2 pi) with N = T", [] {
                 // N^2/4 = pi^2 and N T / 2 pi = 2 pi
                 return near(atkinson_nprime(kTwoPi, kTwoPi), 1 + kPi - std::sqrt(kPi * kPi + 2 * kPi), 1e-14);
               }});
  c.push_back({"kernels", "Gaussian integral A=0, B=1 is sqrt(pi)", [] {
                 const auto v = gaussian_integral(0.0, 1.0);
                 return near(v.real(), std::sqrt(kPi), 1e-15) && v.imag() == 0;
               }});
  c.push_back({"kernels", "Gaussian integral A=2, B=1 is sqrt(pi) e", [] {
                 return near(gaussian_integral(2.0, 1.0).real(), std::sqrt(kPi) * std::exp(1.0), 1e-15);
               }});
  c.push_back({"kernels", "P4 with zero coefficients is 0", [] { return p4_eval(P4Coefficients{}, 3.7) == 0; }});
  c.push_back({"kernels", "P4 = x^4 at x = 2 is 16", [] {
                 P4Coefficients p;
                 p.a4 = 1;
                 return p4_eval(p, 2) == 16;
               }});

  // zeta
  c.push_back({"zeta", "Riemann-Siegel conjugate symmetry at t = 50", [] {
                 const auto a = zeta_rs(50), b = zeta_rs(-50);
                 return a.re == b.re && a.im == -b.im;
               }});
  c.push_back({"zeta", "Euler-Maclaurin t -> -t gives the conjugate", [] {
                 const auto a = zeta_em(7.5), b = zeta_em(-7.5);
                 return a.re == b.re && a.im == -b.im;
               }});
  c.push_back({"zeta", "abs_zeta_pow k = 1 equals |zeta|^2", [] {
                 for (double t : {3.0, 50.0, 1234.5})
                   if (!near(abs_zeta_pow(t, 1), zeta(t).abs2, 1e-12)) return false;
                 return true;
               }});
  c.push_back({"zeta", "abs_zeta_pow k = 2 is the square of k = 1", [] {
                 for (double t : {17.0, 500.25, 9999.0}) {
                   const double a = abs_zeta_pow(t, 1);
                   if (!near(abs_zeta_pow(t, 2), a * a, 1e-13)) return false;
                 }
                 return true;
               }});

  // atkinson
  c.push_back({"atkinson", "constant integrand gives T - main term", [] {
                 MomentCache cache([](double) { return 1.0; });
                 const double T = 1000;
                 return near(e_direct(T, {}, cache), T - mean_square_main_term(T), 1e-12);
               }});
  c.push_back({"atkinson", "sigma1 with N < 1 is 0", [] {
                 const auto d = build_divisor_table(4);
                 return sigma1(1000, 0.5, d) == 0;
               }});
  c.push_back({"atkinson", "sigma1 single term", [] {
                 const auto d = build_divisor_table(4);
                 const double T = 1000;
                 const double want =
                     -std::sqrt(2.0) * std::pow(T / kTwoPi, 0.25) * atkinson_e(T, 1) * std::cos(atkinson_f(T, 1));
                 return near(sigma1(T, 1, d), want, 1e-12);
               }});
  c.push_back({"atkinson", "sigma2 with N' < 1 is 0", [] {
                 const auto d = build_divisor_table(4);
                 return sigma2(1000, 0.5, d) == 0;
               }});
  c.push_back({"atkinson", "sigma2 single term", [] {
                 const auto d = build_divisor_table(4);
                 const double T = 1000, L = std::log(T / kTwoPi);
                 return near(sigma2(T, 1, d), -2 / L * std::cos(T * L - T + kPi / 4), 1e-9);
               }});
  c.push_back({"atkinson", "T = 2 pi 1e3, N = T is finite", [] {
                 const double T = kTwoPi * 1e3;
                 const auto d = build_divisor_table(atkinson_table_limit(T));
                 const auto e = e_atkinson(T, T, d);
                 return std::isfinite(e.e_atkinson) && std::isfinite(e.sigma1) && std::isfinite(e.sigma2) &&
                        std::isfinite(e.e_direct);
               }});

  // smoothed
  c.push_back({"smoothed", "weights integrate to 1", [] {
                 const auto m = jk_quadrature(1000, 7, 1, [](double) { return 1.0; });
                 return std::abs(m.value - 1) <= 1e-12;
               }});
  c.push_back({"smoothed", "series28 cutoff at t = 1e4, G = t^0.3 is finite and small", [] {
                 const auto n = series28_cutoff(1e4, std::pow(1e4, 0.3));
                 return n >= 1 && n < 10000;
               }});
  c.push_back({"smoothed", "identical methods give zero residuals", [] {
                 const GridPoint g[] = {{1000, 10, 1}, {2000, 20, 2}};
                 const auto s = j_residual_sweep(g, SmoothedMethod::quadrature, SmoothedMethod::quadrature, {});
                 for (const auto& r : s.rows)
                   if (r.number("residual") != 0) return false;
                 return s.fitted_C == 0;
               }});
  c.push_back({"smoothed", "records serialize with stable column order", [] {
                 const GridPoint g[] = {{500, 5, 1}};
                 const auto s = j_residual_sweep(g, SmoothedMethod::quadrature, SmoothedMethod::quadrature, {});
                 std::ostringstream a, b;
                 emit(s.rows, OutputFormat::csv, a);
                 emit(s.rows, OutputFormat::csv, b);
                 return a.str() == b.str() &&
                        a.str().rfind("k,t,G,method,value,truncation,reference,reference_value,residual,", 0) == 0;
               }});

  // spectral
  c.push_back({"spectral", "empty file is a valid empty dataset", [] {
                 const auto ds = parse_spectral("", "empty");
                 return ds.data.empty() && ds.max_kappa == 0;
               }});
  c.push_back({"spectral", "out-of-order kappas fail at line 2", [] {
                 try {
                   parse_spectral("5.0 1.0\n4.0 1.0\n", "bad");
                 } catch (const ValidationError& e) {
                   return std::string(e.what()).find("line 2") != std::string::npos;
                 }
                 return false;
               }});
  c.push_back({"spectral", "empty dataset gives 0", [] {
                 return j2_spectral(1e4, 100, make_spectral({}, "empty")).value == 0;
               }});
  c.push_back({"spectral", "window beyond max kappa sums to 0", [] {
                 const auto ds = make_spectral({{9.5, 1.0}, {12.1, 2.0}}, "t");
                 return spectral_window_sum(ds, 20) == 0;
               }});
  c.push_back({"spectral", "window at the data boundary sums what exists", [] {
                 const auto ds = make_spectral({{9.5, 1.0}, {12.1, 2.0}, {13.7, 4.0}}, "t");
                 // [12, 14] holds two points, [8, 10] only the first
                 return spectral_window_sum(ds, 13.0) == 6.0 && spectral_window_sum(ds, 9.0) == 1.0;
               }});
  const auto quad_data = make_spectral({{9.53, 1}, {12.17, 1}, {13.78, 1}, {14.36, 1}, {16.14, 1}, {16.64, 1}}, "t");
  c.push_back({"spectral", "huge delta counts every quadruple", [quad_data] {
                 return count_spectral_quadruples(quad_data, 9, 1e9) == 6 * 6 * 6 * 6;
               }});
  c.push_back({"spectral", "diagonal quadruples always count", [quad_data] {
                 return count_spectral_quadruples(quad_data, 9, 1e-12) >= 2 * 6 * 6 - 6;
               }});
  c.push_back({"spectral", "quadruple count monotone in delta", [quad_data] {
                 std::uint64_t prev = 0;
                 for (double d : {1e-9, 1e-2, 0.1, 0.5, 2.0}) {
                   const auto n = count_spectral_quadruples(quad_data, 9, d);
                   if (n < prev) return false;
                   prev = n;
                 }
                 return true;
               }});

  // spacing
  c.push_back({"spacing", "saturated triple window", [] {
                 const TripleCountQuery q{3, 2, 100.3};
                 const double c = q.delta * std::sqrt(static_cast<double>(q.M));
                 std::uint64_t want = 0;
                 for (std::int64_t m = q.M + 1; m <= 2 * q.M; ++m)
                   for (std::int64_t n = q.Mprime + 1; n <= 2 * q.Mprime; ++n) {
                     const double s = std::sqrt(static_cast<double>(m)) + std::sqrt(static_cast<double>(n));
                     want += static_cast<std::uint64_t>(std::floor((s + c) * (s + c)));  // s - c < 0: k starts at 1
                   }
                 return count_triples_fast(q).count == want && count_triples_bruteforce(q).count == want;
               }});
  c.push_back({"spacing", "delta = 0, M = M' = 1 counts sqrt 2 + sqrt 2 = sqrt 8", [] {
                 return count_triples_fast({1, 1, 0.0}).count == 1 && count_triples_bruteforce({1, 1, 0.0}).count == 1;
               }});
  c.push_back({"spacing", "delta = 0 counts pairs with m n a square", [] {
                 const TripleCountQuery q{12, 7, 0.0};
                 std::uint64_t want = 0;
                 for (std::int64_t m = 13; m <= 24; ++m)
                   for (std::int64_t n = 8; n <= 14; ++n)
                     if (isqrt(m * n) * isqrt(m * n) == m * n) ++want;
                 return count_triples_fast(q).count == want;
               }});
  c.push_back({"spacing", "triple count monotone in delta", [] {
                 std::uint64_t prev = 0;
                 for (double d : {0.0, 1e-4, 1e-3, 1e-2, 0.1}) {
                   const auto n = count_triples_fast({30, 20, d}).count;
                   if (n < prev) return false;
                   prev = n;
                 }
                 return true;
               }});
  c.push_back({"spacing", "diagonal quadruples always count", [] {
                 const std::uint64_t N = 10;
                 return count_quads_fast({10, 2, 1e-9}).count >= 2 * N * N - N &&
                        count_quads_bruteforce({10, 3, 1e-9}).count >= 2 * N * N - N;
               }});
  c.push_back({"spacing", "huge delta counts N^4 quadruples", [] {
                 return count_quads_fast({12, 2, 1e6}).count == 12 * 12 * 12 * 12 &&
                        count_quads_bruteforce({12, 3, 1e6}).count == 12 * 12 * 12 * 12;
               }});
  c.push_back({"spacing", "N = 1 has the single tuple (2,2,2,2)", [] {
                 return count_quads_fast({1, 2, 1e-3}).count == 1 && count_quads_bruteforce({1, 3, 5.0}).count == 1;
               }});
  c.push_back({"spacing", "swapping (n1,n2) with (n3,n4) keeps the count", [] {
                 const std::int64_t N = 9;
                 const double lim = 0.05 * std::sqrt(static_cast<double>(N));
                 std::uint64_t fwd = 0, rev = 0;
                 for (std::int64_t a = N + 1; a <= 2 * N; ++a)
                   for (std::int64_t b = N + 1; b <= 2 * N; ++b)
                     for (std::int64_t x = N + 1; x <= 2 * N; ++x)
                       for (std::int64_t y = N + 1; y <= 2 * N; ++y) {
                         const double s1 = std::sqrt(double(a)) + std::sqrt(double(b));
                         const double s2 = std::sqrt(double(x)) + std::sqrt(double(y));
                         fwd += std::abs(s1 - s2) < lim;
                         rev += std::abs(s2 - s1) < lim;
                       }
                 return fwd == rev && fwd == count_quads_fast({N, 2, 0.05}).count;
               }});
  c.push_back({"spacing", "saturated queries never flag", [] {
                 const QuadCountQuery qs[] = {{4, 2, 1e6}, {8, 2, 1e6}, {16, 2, 1e6}};
                 return verify_quad_bounds(qs, 1.0).flagged == 0;
               }});

  // experiments
  c.push_back({"experiments", "I_1 minus the main term is e_direct", [] {
                 const double T = 1000;
                 return std::abs(i_k(T, 1) - mean_square_main_term(T) - e_direct(T)) <= 1e-6;
               }});
  c.push_back({"experiments", "I_k(0) = 0", [] {
                 for (int k = 1; k <= 4; ++k)
                   if (i_k(0, k) != 0) return false;
                 return true;
               }});
  c.push_back({"experiments", "exceedance at U = 0 is the whole interval", [] {
                 const double U[] = {0.0};
                 return near(exceedance_measure(100, 2, 1, U)[0].second, 100, 1e-12);
               }});
  c.push_back({"experiments", "exceedance non-increasing in U", [] {
                 const double U[] = {0.0, 0.5, 1.0, 2.0, 4.0, 8.0};
                 const auto r = exceedance_measure(200, 3, 1, U);
                 for (std::size_t i = 1; i < r.size(); ++i)
                   if (r[i].second > r[i - 1].second) return false;
                 return true;
               }});
  c.push_back({"experiments", "V above the maximum gives R = 0", [] {
                 return large_value_points(1000, 1e3).R == 0;
               }});
  c.push_back({"experiments", "large-value points satisfy both invariants", [] {
                 const auto lv = large_value_points(1000, 1.0);
                 if (lv.R == 0 || lv.R != static_cast<std::int64_t>(lv.points.size())) return false;
                 for (std::size_t i = 0; i < lv.points.size(); ++i) {
                   if (std::abs(hardy_z(lv.points[i])) < lv.V) return false;
                   if (i && lv.points[i] - lv.points[i - 1] < 1) return false;
                 }
                 return true;
               }});
  c.push_back({"experiments", "V < 2 is flagged and left out of the fit", [] {
                 const double V[] = {1.0, 3.0};
                 const auto rep = theorem4_pipeline(200, 1, 2, 0.0, V);
                 return rep.rows[0].flagged && !rep.rows[1].flagged && rep.fitted_C == rep.rows[1].shape;
               }});
  c.push_back({"experiments", "pointwise inequality at a zero ordinate", [] {
                 const double t[] = {14.134725141734693};
                 const auto rep = pointwise_convexity_check(t, 1);
                 return rep.rows[0].number("lhs") < 1e-6 && rep.fitted_C < 1e-6;
               }});

  // cli
  c.push_back({"cli", "no arguments exits 1", [] {
                 const char* argv[] = {"zmoments"};
                 std::streambuf* old = std::cerr.rdbuf();
                 std::ostringstream sink;
                 std::cerr.rdbuf(sink.rdbuf());
                 const int rc = dispatch(1, argv);
                 std::cerr.rdbuf(old);
                 return rc == 1 && !sink.str().empty();
               }});
  c.push_back({"cli", "etterm writes 10 rows with the E(T) header", [] {
                 const auto path = std::filesystem::temp_directory_path() / "zmoments_selftest_e.csv";
                 const std::string p = path.string();
                 const char* argv[] = {"zmoments", "etterm", "--tmin", "1000", "--tmax", "10000",
                                       "--points", "10", "--out", p.c_str()};
                 if (dispatch(10, argv) != 0) return false;
                 std::ifstream f(path);
                 std::string line;
                 std::getline(f, line);
                 if (line != "T,e_direct,e_atkinson,sigma1,sigma2,residual") return false;
                 int rows = 0;
                 while (std::getline(f, line))
                   if (!line.empty()) ++rows;
                 std::filesystem::remove(path);
                 return rows == 10;
               }});
  c.push_back({"cli", "empty record list gives a header-only CSV", [] {
                 std::ostringstream s;
                 const std::string cols[] = {"a", "b"};
                 emit({}, OutputFormat::csv, s, cols);
                 return s.str() == "a,b\n";
               }});
  c.push_back({"cli", "one record round-trips through JSON", [] {
                 ExperimentRecord r;
                 r.set("x", 0.1).set("n", std::int64_t{-7}).set("s", "a\"b");
                 std::ostringstream s;
                 emit(std::span<const ExperimentRecord>(&r, 1), OutputFormat::json, s);
                 const auto j = nlohmann::json::parse(s.str());
                 return j.size() == 1 && j[0]["x"].get<double>() == 0.1 && j[0]["n"].get<std::int64_t>() == -7 &&
                        j[0]["s"].get<std::string>() == "a\"b";
               }});
  c.push_back({"cli", "CSV field order identical across runs", [] {
                 std::string first;
                 for (int run = 0; run < 2; ++run) {
                   ExperimentRecord r;
                   r.set("T", 1.0).set("e_direct", 2.0).set("residual", 3.0);
                   std::ostringstream s;
                   emit(std::span<const ExperimentRecord>(&r, 1), OutputFormat::csv, s);
                   if (run == 0)
                     first = s.str();
                   else if (s.str() != first)
                     return false;
                 }
                 return first.rfind("T,e_direct,residual\n", 0) == 0;
               }});
  return c;
}

}  // namespace

int run_selftest(std::ostream& out) {
  int failures = 0;
  for (const auto& chk : checks()) {
    bool ok = false;
    std::string why;
    try {
      ok = chk.run();
    } catch (const std::exception& e) {
      why = std::string(" (") + e.what() + ")";
    }
    out << (ok ? "ok    " : "FAIL  ") << chk.module << ": " << chk.what << why << '\n';
    failures += ok ? 0 : 1;
  }
  out << (failures ? std::to_string(failures) + " check(s) failed" : std::string("all checks passed")) << '\n';
  return failures;
}

}  // namespace zm
