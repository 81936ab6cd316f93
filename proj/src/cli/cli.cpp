#include "zm/cli.hpp"

#include "zm/atkinson.hpp"
#include "zm/common.hpp"
#include "zm/experiments.hpp"
#include "zm/record.hpp"
#include "zm/smoothed.hpp"
#include "zm/spacing.hpp"
#include "zm/spectral.hpp"
#include "zm/zeta.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace zm {

namespace {

struct Common {
  std::string out = "-";
  std::string format = "csv";
};

std::filesystem::path output_path(const std::string& out) {
  if (out == "-") return out;
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("ZMOM_OUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  return p;
}

void write_records(const Common& c, std::span<const ExperimentRecord> rows, std::span<const std::string> columns = {}) {
  emit(rows, parse_output_format(c.format), output_path(c.out), columns);
}

void write_text(const Common& c, const std::string& text) {
  if (c.out == "-") {
    std::cout << text << '\n';
    return;
  }
  const auto p = output_path(c.out);
  std::ofstream f(p);
  if (!f) throw ComputationError("cannot open '" + p.string() + "' for writing");
  f << text << '\n';
  if (!f) throw ComputationError("write failed for '" + p.string() + "'");
}

std::vector<double> spaced(double lo, double hi, int n, bool log_spacing) {
  require(n >= 1, "--points must be >= 1");
  require(std::isfinite(lo) && std::isfinite(hi) && lo <= hi, "need tmin <= tmax");
  if (n == 1) return {lo};
  require(!log_spacing || lo > 0, "log spacing needs tmin > 0");
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / (n - 1);
    v[static_cast<std::size_t>(i)] = log_spacing ? lo * std::pow(hi / lo, f) : lo + f * (hi - lo);
  }
  v.back() = hi;
  return v;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out,-o", c.out, "output file, '-' for stdout (relative paths go under $ZMOM_OUT_DIR)");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->allow_config_extras(CLI::config_extras_mode::error);
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"Numerical experiments on moments of |zeta(1/2+it)|", "zmoments"};
  app.set_config("--config", "", "INI/TOML file; [subcommand] sections, flags override");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (default: hardware concurrency)")
      ->check(CLI::PositiveNumber);

  Common c;

  // zeta
  auto* zeta_cmd = app.add_subcommand("zeta", "evaluate zeta(1/2+it)");
  std::vector<double> zeta_t;
  std::string zeta_method = "auto";
  zeta_cmd->add_option("--t", zeta_t, "heights")->required();
  zeta_cmd->add_option("--method", zeta_method, "auto, rs or em")->check(CLI::IsMember({"auto", "rs", "em"}));
  add_common(zeta_cmd, c);

  // etterm
  auto* et_cmd = app.add_subcommand("etterm", "E(T) by quadrature and by Atkinson's formula");
  double tmin = 0, tmax = 0;
  int points = 1;
  bool et_log = false;
  et_cmd->add_option("--tmin", tmin)->required();
  et_cmd->add_option("--tmax", tmax)->required();
  et_cmd->add_option("--points", points, "number of heights");
  et_cmd->add_flag("--log", et_log, "geometric spacing");
  double et_tol = QuadratureConfig{}.tolerance;
  et_cmd->add_option("--tolerance", et_tol, "maximum estimated quadrature error");
  add_common(et_cmd, c);

  // smoothed
  auto* sm_cmd = app.add_subcommand("smoothed", "J_k(t, G) by quadrature or series, optionally against a reference");
  std::vector<double> sm_t;
  std::optional<double> sm_G, sm_theta;
  int sm_k = 1;
  std::string sm_method = "quadrature", sm_reference, sm_spectral;
  sm_cmd->add_option("--t", sm_t, "centres")->required();
  sm_cmd->add_option("--G", sm_G, "width");
  sm_cmd->add_option("--theta", sm_theta, "width G = t^theta");
  sm_cmd->add_option("--k", sm_k, "moment index (1..4)");
  sm_cmd->add_option("--method", sm_method, "quadrature, series29, series28, spectral");
  sm_cmd->add_option("--reference", sm_reference, "second method; rows report method - reference");
  sm_cmd->add_option("--spectral-file", sm_spectral, "data for the spectral method");
  add_common(sm_cmd, c);

  // spectral
  auto* sp_cmd = app.add_subcommand("spectral", "load spectral data and evaluate the J_2 series");
  std::string sp_file;
  std::vector<double> sp_t;
  std::optional<double> sp_G, sp_theta;
  double sp_D = 1.0, sp_scale = 1.0;
  sp_cmd->add_option("--file", sp_file, "kappa alphaH3 table")->required();
  sp_cmd->add_option("--t", sp_t, "centres");
  sp_cmd->add_option("--G", sp_G);
  sp_cmd->add_option("--theta", sp_theta);
  sp_cmd->add_option("--D", sp_D, "log power in the lower window limit");
  sp_cmd->add_option("--cutoff-scale", sp_scale, "extend the cutoff by this factor");
  add_common(sp_cmd, c);

  // spacing
  auto* spc_cmd = app.add_subcommand("spacing", "square-root spacing counts and bound-shape fits");
  std::string family = "triples";
  std::int64_t size = 10, size2 = 0;
  int root = 2, ladder = 1;
  std::optional<double> delta, delta_exp;
  double eps = 0.1, prior_C = 0.0;
  bool brute = false;
  spc_cmd->add_option("--family", family, "triples or quads")->check(CLI::IsMember({"triples", "quads"}));
  spc_cmd->add_option("--M,--N", size, "M (triples) or N (quads)");
  spc_cmd->add_option("--Mprime", size2, "M' for triples (default M)");
  spc_cmd->add_option("--k", root, "root order for quads");
  spc_cmd->add_option("--delta", delta);
  spc_cmd->add_option("--delta-exp", delta_exp, "delta = size^{-exp}, applied per ladder step");
  spc_cmd->add_option("--ladder", ladder, "number of 2x-geometric sizes");
  spc_cmd->add_option("--eps", eps);
  spc_cmd->add_option("--prior-C", prior_C, "flag counts above 2 * prior-C * bound");
  spc_cmd->add_flag("--brute", brute, "cross-check every count against brute-force enumeration");
  add_common(spc_cmd, c);

  // moments
  auto* mo_cmd = app.add_subcommand("moments", "integrals of J_k^m over [T, 2T], exceedance measures, P4 fit");
  MomentSweepConfig mcfg;
  mcfg.T_grid = {1e3, 1e4, 1e5};
  std::vector<double> U_grid;
  bool p4 = false;
  mo_cmd->add_option("--k", mcfg.k);
  mo_cmd->add_option("--m", mcfg.m);
  mo_cmd->add_option("--theta", mcfg.theta);
  mo_cmd->add_option("--T", mcfg.T_grid, "heights");
  mo_cmd->add_option("--U", U_grid, "exceedance levels (reported for each T)");
  mo_cmd->add_flag("--p4", p4, "calibrate the fourth-moment main term on the T grid instead");
  add_common(mo_cmd, c);

  // largevalues
  auto* lv_cmd = app.add_subcommand("largevalues", "large values of |zeta| and the implied moment bound");
  double lv_T = 1e3, lv_alpha = 0.0;
  int lv_k = 1, lv_m = 2;
  std::vector<double> lv_V = {2, 3, 4, 6, 8};
  lv_cmd->add_option("--T", lv_T);
  lv_cmd->add_option("--k", lv_k);
  lv_cmd->add_option("--m", lv_m);
  lv_cmd->add_option("--alpha", lv_alpha);
  lv_cmd->add_option("--V", lv_V, "thresholds");
  add_common(lv_cmd, c);

  auto* self_cmd = app.add_subcommand("selftest", "run the built-in invariant checks");
  self_cmd->allow_config_extras(CLI::config_extras_mode::error);

  if (argc <= 1) {
    std::cerr << app.help();
    return 1;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  if (threads > 0) set_thread_count(threads);

  try {
    if (*zeta_cmd) {
      std::vector<ExperimentRecord> rows;
      for (double t : zeta_t) {
        ZetaPoint p;
        if (zeta_method == "rs")
          p = zeta_rs(t);
        else if (zeta_method == "em")
          p = zeta_em(t);
        else
          p = zeta(t);
        ExperimentRecord r;
        r.set("t", p.t).set("re", p.re).set("im", p.im).set("abs2", p.abs2);
        rows.push_back(std::move(r));
      }
      write_records(c, rows);
    } else if (*et_cmd) {
      require(tmin >= 10, "--tmin must be >= 10");
      QuadratureConfig cfg;
      cfg.tolerance = et_tol;
      const auto heights = spaced(tmin, tmax, points, et_log);
      std::vector<ExperimentRecord> rows;
      for (const auto& e : et_sweep(heights, cfg)) rows.push_back(e.to_record());
      write_records(c, rows, ETRecord::columns());
    } else if (*sm_cmd) {
      require(sm_G.has_value() != sm_theta.has_value(), "give exactly one of --G and --theta");
      const SmoothedMethod method = parse_method(sm_method);
      const SmoothedMethod reference = sm_reference.empty() ? method : parse_method(sm_reference);
      std::vector<GridPoint> grid;
      for (double t : sm_t) {
        require(t > 1, "--t values must exceed 1");
        grid.push_back({t, sm_G ? *sm_G : std::pow(t, *sm_theta), sm_k});
      }
      std::optional<SpectralDataset> ds;
      std::optional<DivisorTable> dtab;
      SweepInputs in;
      const auto uses = [&](SmoothedMethod m) { return method == m || reference == m; };
      if (uses(SmoothedMethod::spectral)) {
        require(!sm_spectral.empty(), "the spectral method needs --spectral-file");
        ds = load_spectral(sm_spectral);
        in.spectral = &*ds;
      }
      if (uses(SmoothedMethod::series29) || uses(SmoothedMethod::series28)) {
        std::int64_t limit = 1;
        for (const auto& p : grid) {
          require(p.G > 0, "G must be positive");
          limit = std::max({limit, series29_min_cutoff(p.t, p.G), series28_cutoff(p.t, p.G)});
        }
        require(limit <= 500'000'000, "series cutoff too long for a divisor table");
        dtab.emplace(build_divisor_table(static_cast<std::uint64_t>(limit)));
        in.dtab = &*dtab;
      }
      write_records(c, j_residual_sweep(grid, reference, method, in).rows);
    } else if (*sp_cmd) {
      const auto ds = load_spectral(sp_file);
      std::vector<ExperimentRecord> rows;
      if (sp_t.empty()) {
        ExperimentRecord r;
        r.set("source", ds.source).set("normalization", ds.normalization);
        r.set("count", static_cast<std::int64_t>(ds.data.size())).set("max_kappa", ds.max_kappa);
        rows.push_back(std::move(r));
      } else {
        require(sp_G.has_value() != sp_theta.has_value(), "give exactly one of --G and --theta");
        for (double t : sp_t) {
          require(t > 1, "--t values must exceed 1");
          const double G = sp_G ? *sp_G : std::pow(t, *sp_theta);
          const auto m = j2_spectral(t, G, ds, sp_D, sp_scale);
          ExperimentRecord r;
          r.set("t", t).set("G", G).set("value", m.value).set("truncation", Field(m.truncation));
          r.set("cutoff", sp_scale * j2_spectral_cutoff(t, G)).set("source", ds.source);
          rows.push_back(std::move(r));
        }
      }
      write_records(c, rows);
    } else if (*spc_cmd) {
      require(size >= 1, "size must be >= 1");
      require(ladder >= 1 && ladder <= 20, "--ladder must lie in [1, 20]");
      require(delta.has_value() != delta_exp.has_value(), "give exactly one of --delta and --delta-exp");
      const auto delta_at = [&](double s) { return delta ? *delta : std::pow(s, -*delta_exp); };
      BoundShapeFit fit;
      if (family == "triples") {
        const std::int64_t s2 = size2 > 0 ? size2 : size;
        require(s2 <= size, "--Mprime must not exceed --M");
        std::vector<TripleCountQuery> qs;
        for (int i = 0; i < ladder; ++i) {
          const std::int64_t M = size << i, Mp = s2 << i;
          qs.push_back({M, Mp, delta_at(static_cast<double>(M))});
        }
        if (brute)
          for (const auto& q : qs)
            if (count_triples_bruteforce(q).count != count_triples_fast(q).count)
              throw ComputationError("fast and brute-force triple counts disagree at M = " + std::to_string(q.M));
        fit = verify_triple_bounds(qs, prior_C, eps);
      } else {
        std::vector<QuadCountQuery> qs;
        for (int i = 0; i < ladder; ++i) {
          const std::int64_t N = size << i;
          qs.push_back({N, root, delta_at(static_cast<double>(N))});
        }
        if (brute)
          for (const auto& q : qs)
            if (count_quads_bruteforce(q).count != count_quads_fast(q).count)
              throw ComputationError("fast and brute-force quad counts disagree at N = " + std::to_string(q.N));
        fit = verify_quad_bounds(qs, prior_C, eps);
      }
      std::cerr << "fitted_C " << format_double(fit.fitted_C) << "  spread " << format_double(fit.spread)
                << "  trend " << format_double(fit.trend_slope) << "  flagged " << fit.flagged << '\n';
      write_records(c, fit.rows);
    } else if (*mo_cmd) {
      if (p4) {
        const auto cal = calibrate_p4(mcfg.T_grid);
        std::cerr << "a2 " << format_double(cal.coeffs.a2) << "  a1 " << format_double(cal.coeffs.a1) << "  a0 "
                  << format_double(cal.coeffs.a0) << "  C " << format_double(cal.fitted_C) << '\n';
        write_records(c, cal.rows);
      } else if (!U_grid.empty()) {
        std::vector<ExperimentRecord> rows;
        for (double T : mcfg.T_grid) {
          const double G = std::pow(T, mcfg.theta);
          for (const auto& [U, mu] : exceedance_measure(T, G, mcfg.k, U_grid)) {
            ExperimentRecord r;
            r.set("T", T).set("G", G).set("k", mcfg.k).set("m", mcfg.m).set("U", U).set("measure", mu);
            r.set("shape", mu * std::pow(U, mcfg.m) / std::pow(T, 1 + kEpsProxy));
            rows.push_back(std::move(r));
          }
        }
        write_records(c, rows);
      } else {
        write_records(c, moment_of_jk(mcfg).rows);
      }
    } else if (*lv_cmd) {
      const auto rep = theorem4_pipeline(lv_T, lv_k, lv_m, lv_alpha, lv_V);
      if (parse_output_format(c.format) == OutputFormat::json)
        write_text(c, rep.to_json());
      else
        write_records(c, rep.records());
    } else if (*self_cmd) {
      return run_selftest(std::cout) == 0 ? 0 : 1;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace zm
