#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>

#include "io.hpp"
#include "tflp/analytics.hpp"
#include "tflp/errors.hpp"
#include "tflp/levy_driver.hpp"
#include "tflp/parallel.hpp"
#include "tflp/process_sim.hpp"

namespace cli {

namespace {

using tflp::ErrorKind;
using json = nlohmann::ordered_json;

const char* kVersion = "0.1.0";

std::vector<OptSpec> driver_options() {
  return {{"driver", "cpois", "cpois | tstable | gauss"},
          {"intensity", "1", "compound Poisson rate"},
          {"jumps", "uniform", "uniform | gaussian | twopoint"},
          {"a", "1", "uniform jump half-width"},
          {"sigma", "1", "gaussian jump or Brownian scale"},
          {"c", "1", "two-point jump size"},
          {"alpha", "1.5", "tempered stable index"},
          {"lambda_noise", "1", "tempered stable tempering"},
          {"scale", "1", "tempered stable Levy density scale"},
          {"symmetric", "true", "two-sided tempered stable"}};
}

tflp::LevyDriverSpec driver_from(const Config& cfg) {
  std::map<std::string, std::string> m;
  for (const auto& o : driver_options()) m[o.key] = cfg.str(o.key);
  return tflp::LevyDriverSpec::from_config(m);
}

tflp::TemperedParams params_from(const Config& cfg) {
  tflp::TemperedParams p{cfg.num("d"), cfg.num("lambda")};
  p.validate();
  return p;
}

std::vector<OptSpec> with(std::vector<OptSpec> a, const std::vector<OptSpec>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// ---- simulate ----

Outcome simulate(const std::string& kind, const Config& cfg) {
  const auto p = params_from(cfg);
  const auto drv = driver_from(cfg);
  const tflp::PathKind pk = kind == "tflp1"   ? tflp::PathKind::TFLP1
                            : kind == "tflp2" ? tflp::PathKind::TFLP2
                            : kind == "tfln1" ? tflp::PathKind::TFLN1
                                              : tflp::PathKind::TFLN2;
  tflp::SampleGrid grid{cfg.num("tmin"), cfg.num("tmax"), cfg.integer("n")};
  grid.validate();
  tflp::SimOptions opt;
  opt.refine = static_cast<int>(cfg.integer("refine"));
  opt.tolerance = cfg.num("tol");
  opt.max_cells = cfg.integer("max_cells");
  const long count = cfg.integer("ensemble");
  tflp::require(count >= 1, ErrorKind::parameter, "ensemble must be >= 1");
  const std::uint64_t seed = cfg.u64("seed");
  const tflp::PathSimulator sim(pk, p, grid, drv, cfg.num("trunc"), opt, cfg.flag("smooth"));

  Table t;
  t.names = {"t"};
  t.units = {"time"};
  std::vector<double> ts(static_cast<size_t>(grid.n_points()));
  for (long k = 0; k < grid.n_points(); ++k) ts[static_cast<size_t>(k)] = grid.x(k);
  t.columns.push_back(std::move(ts));
  std::vector<std::vector<double>> paths(static_cast<size_t>(count));
  tflp::parallel_for(paths.size(), [&](size_t i) { paths[i] = sim.run(seed + i).values; });
  for (long i = 0; i < count; ++i) {
    t.names.push_back(count == 1 ? std::string("value") : "seed_" + std::to_string(seed + static_cast<std::uint64_t>(i)));
    t.units.push_back("value");
    t.columns.push_back(std::move(paths[static_cast<size_t>(i)]));
  }
  Outcome o;
  write_csv(cfg.str("out"), t);
  o.outputs.push_back(cfg.str("out"));
  o.results["trunc_width"] = sim.trunc_width();
  o.results["integration_step"] = sim.step();
  o.results["second_moment"] = tflp::second_moment(drv);
  return o;
}

// ---- analytic ----

Outcome analytic(const std::string& curve, const Config& cfg) {
  const auto p = params_from(cfg);
  const double el2 = cfg.num("el2");
  Table t;
  Outcome o;
  if (curve == "cov1" || curve == "cov2") {
    const auto ts = parse_range(cfg.str("t"));
    const bool diag = cfg.str("s").empty();
    const double s = diag ? 0.0 : cfg.num("s");
    std::vector<double> cov(ts.size());
    for (size_t i = 0; i < ts.size(); ++i) {
      const double a = diag ? ts[i] : s;
      cov[i] = curve == "cov1" ? tflp::cov_tflp1(p, a, ts[i], el2) : tflp::cov_tflp2(p, a, ts[i], el2);
    }
    t.names = {"t", "cov"};
    t.units = {"time", diag ? "variance" : "covariance"};
    t.columns = {ts, cov};
  } else if (curve == "varlimit") {
    t.names = {"varlimit"};
    t.units = {"variance"};
    t.columns = {{tflp::var_limit_tflp1(p, el2)}};
  } else if (curve == "acvf1") {
    const auto hs = parse_range(cfg.str("lags"));
    std::vector<double> g(hs.size()), a(hs.size());
    for (size_t i = 0; i < hs.size(); ++i) {
      g[i] = tflp::acvf_tfln1(p, hs[i], el2);
      a[i] = tflp::acvf_tfln1_asymptotic(p, hs[i], el2);
    }
    t.names = {"h", "acvf", "asymptotic"};
    t.units = {"lag", "covariance", "covariance"};
    t.columns = {hs, g, a};
  } else if (curve == "acvf2") {
    const auto hs = parse_range(cfg.str("lags"));
    std::vector<double> g(hs.size());
    for (size_t i = 0; i < hs.size(); ++i) g[i] = tflp::acvf_tfln2(p, hs[i], el2);
    t.names = {"h", "acvf"};
    t.units = {"lag", "covariance"};
    t.columns = {hs, g};
  } else if (curve == "acvf2band") {
    const auto hs = parse_range(cfg.str("lags"));
    const auto band = tflp::calibrate_tfln2_band(p, el2, cfg.num("h_lo"), cfg.num("h_hi"));
    std::vector<double> g(hs.size()), lo(hs.size()), hi(hs.size());
    for (size_t i = 0; i < hs.size(); ++i) {
      tflp::require(hs[i] > 0.0, ErrorKind::parameter, "acvf2band: lags must be > 0");
      g[i] = tflp::acvf_tfln2(p, hs[i], el2);
      lo[i] = band.lower(p, hs[i]);
      hi[i] = band.upper(p, hs[i]);
    }
    t.names = {"h", "acvf", "lower", "upper"};
    t.units = {"lag", "covariance", "covariance", "covariance"};
    t.columns = {hs, g, lo, hi};
    o.results["c1"] = band.c1;
    o.results["c2"] = band.c2;
    o.results["c_limit"] = tflp::acvf_tfln2_limit_constant(p, el2);
    o.results["h_lo"] = band.h_lo;
    o.results["h_hi"] = band.h_hi;
  } else {  // spec1, spec2
    const auto ws = parse_range(cfg.str("omega"));
    std::vector<double> s(ws.size());
    for (size_t i = 0; i < ws.size(); ++i)
      s[i] = curve == "spec1" ? tflp::spec_density_tfln1(p, ws[i]) : tflp::spec_density_tfln2(p, ws[i]);
    t.names = {"omega", "density"};
    t.units = {"rad/time", "density (el2 = 1)"};
    t.columns = {ws, s};
  }
  write_csv(cfg.str("out"), t);
  o.outputs.push_back(cfg.str("out"));
  return o;
}

// ---- estimate ----

struct Series {
  std::vector<double> t, x;
  double dx = 0.0;
};

Series load_series(const Config& cfg, bool uniform) {
  const auto cols = read_csv(cfg.str("in"));
  const long c = cfg.integer("column");
  tflp::require(cols.size() >= 2 && c >= 1 && c < static_cast<long>(cols.size()), ErrorKind::io,
                cfg.str("in") + ": column " + std::to_string(c) + " not present");
  Series s{cols[0], cols[static_cast<size_t>(c)], 0.0};
  if (uniform) {
    const size_t n = s.t.size();
    tflp::require(n >= 3, ErrorKind::length, "input series too short");
    s.dx = (s.t.back() - s.t.front()) / static_cast<double>(n - 1);
    tflp::require(s.dx > 0.0, ErrorKind::alignment, "time column must increase");
    for (size_t i = 0; i < n; ++i)
      tflp::require(std::abs(s.t[i] - (s.t.front() + static_cast<double>(i) * s.dx)) <= 1e-6 * s.dx,
                    ErrorKind::alignment, "time column is not uniformly spaced (row " + std::to_string(i + 1) + ")");
  }
  return s;
}

Outcome estimate(const std::string& task, const Config& cfg) {
  Outcome o;
  const std::string out = cfg.str("out");
  if (task == "acvf") {
    const auto s = load_series(cfg, true);
    const auto g = tflp::empirical_acvf(s.x, cfg.integer("max_lag"));
    std::vector<double> lag(g.size());
    for (size_t k = 0; k < g.size(); ++k) lag[k] = static_cast<double>(k) * s.dx;
    write_csv(out, {{"lag", "acvf"}, {"time", "covariance"}, {lag, g}});
  } else if (task == "periodogram") {
    const auto s = load_series(cfg, true);
    const auto P = tflp::periodogram(s.x, cfg.integer("segment"));
    std::vector<double> w, pw;
    for (const auto& pt : P) {
      w.push_back(pt.omega / s.dx);
      pw.push_back(pt.power * s.dx);
    }
    write_csv(out, {{"omega", "power"}, {"rad/time", "density"}, {w, pw}});
  } else if (task == "fit-semilrd") {
    const auto s = load_series(cfg, false);
    const double hmin = cfg.num("hmin");
    const double hmax = cfg.str("hmax").empty() ? std::numeric_limits<double>::infinity() : cfg.num("hmax");
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i < s.t.size(); ++i)
      if (s.t[i] >= hmin && s.t[i] <= hmax) pts.emplace_back(s.t[i], s.x[i]);
    const auto f = tflp::fit_semi_lrd(pts);
    json j;
    j["lambda_hat"] = f.lambda_hat;
    j["delta_hat"] = f.delta_hat;
    j["c_hat"] = f.c_hat;
    j["sign"] = f.sign;
    j["h_min"] = f.h_min;
    j["h_max"] = f.h_max;
    j["residual_rms"] = f.residual_rms;
    j["converged"] = f.converged;
    write_json(out, j);
    o.results = j;
  } else {  // holder
    const auto s = load_series(cfg, true);
    const double tmin = cfg.num("tau_min") > 0.0 ? cfg.num("tau_min") : 2.0 * s.dx;
    const double tmax =
        cfg.num("tau_max") > 0.0 ? cfg.num("tau_max") : (s.t.back() - s.t.front()) / 16.0;
    const auto h = tflp::holder_estimate(s.x, s.dx, tmin, tmax);
    json j;
    j["holder"] = h.holder;
    j["zeta_sup"] = h.zeta_sup;
    j["zeta_mean_square"] = h.zeta_mean_square;
    j["tau"] = h.taus;
    j["mean_square"] = h.mean_square;
    j["sup_square"] = h.sup_square;
    write_json(out, j);
    o.results["holder"] = h.holder;
    o.results["zeta_sup"] = h.zeta_sup;
    o.results["zeta_mean_square"] = h.zeta_mean_square;
  }
  o.outputs.push_back(out);
  return o;
}

std::vector<Command> build() {
  const std::vector<OptSpec> pd = {{"d", "", "memory parameter, d > -1/2"},
                                   {"lambda", "", "tempering parameter, lambda > 0"}};
  std::vector<Command> cs;
  cs.push_back({"simulate",
                "simulate sample paths on a uniform grid",
                {"tflp1", "tflp2", "tfln1", "tfln2"},
                with(with(pd, driver_options()),
                     {{"tmin", "0", "first grid time (a multiple of the integration step)"},
                      {"tmax", "1", "last grid time"},
                      {"n", "1024", "grid cells"},
                      {"ensemble", "1", "number of paths, seeds seed .. seed+ensemble-1"},
                      {"seed", "1", "first seed"},
                      {"refine", "8", "integration cells per grid cell"},
                      {"trunc", "0", "truncation width (0 = from tol)"},
                      {"tol", "1e-6", "kernel tail tolerance"},
                      {"max_cells", "67108864", "budget of driver cells"},
                      {"smooth", "false", "integrate the derivative kernel (d > 1/2)"},
                      {"out", "", "output CSV"}}),
                simulate});
  cs.push_back({"analytic",
                "tabulate covariances, autocovariances and spectral densities",
                {"cov1", "cov2", "varlimit", "acvf1", "acvf2", "acvf2band", "spec1", "spec2"},
                with(pd, {{"el2", "1", "E[L(1)^2]"},
                          {"s", "", "fixed first time for cov curves (empty = variance)"},
                          {"t", "0:3:0.1", "time range a:b:step"},
                          {"lags", "1:20:1", "lag range a:b:step"},
                          {"omega", "0:3.14:0.01", "frequency range a:b:step"},
                          {"h_lo", "0", "band calibration start (0 = automatic)"},
                          {"h_hi", "0", "band calibration end (0 = automatic)"},
                          {"out", "", "output CSV"}}),
                analytic});
  cs.push_back({"estimate",
                "estimators on a (t, value) CSV",
                {"acvf", "periodogram", "fit-semilrd", "holder"},
                {{"in", "", "input CSV"},
                 {"column", "1", "value column (0-based; column 0 is time)"},
                 {"max_lag", "100", "acvf: largest lag in samples"},
                 {"segment", "256", "periodogram: Welch segment length (power of two)"},
                 {"hmin", "0", "fit-semilrd: smallest lag used"},
                 {"hmax", "", "fit-semilrd: largest lag used (empty = all)"},
                 {"tau_min", "0", "holder: smallest lag (0 = 2 dx)"},
                 {"tau_max", "0", "holder: largest lag (0 = span / 16)"},
                 {"out", "", "output file (CSV, or JSON for fit-semilrd and holder)"}},
                estimate});
  cs.push_back({"verify",
                "run the verification suites",
                {"calculus", "covariance", "isometry", "spectra", "all"},
                {{"budget", "quick", "quick | full"},
                 {"n", "0", "Monte Carlo draws (0 = budget default)"},
                 {"seed", "1", "first seed"},
                 {"out", "", "optional JSON report"}},
                run_verify});
  return cs;
}

}  // namespace

const std::vector<Command>& commands() {
  static const std::vector<Command> cs = build();
  return cs;
}

const Command& find_command(const std::string& name) {
  for (const auto& c : commands())
    if (c.name == name) return c;
  throw UsageError("unknown command '" + name + "'");
}

int execute(const Command& cmd, const std::string& what, const Config& cfg) {
  if (std::find(cmd.choices.begin(), cmd.choices.end(), what) == cmd.choices.end())
    throw UsageError(cmd.name + ": unknown choice '" + what + "'");
  if (cmd.name != "verify" && cfg.str("out").empty()) throw UsageError(cmd.name + ": --out is required");
  const Outcome o = cmd.run(what, cfg);
  if (!o.outputs.empty()) {
    json m;
    m["tool"] = "tflp";
    m["version"] = kVersion;
    m["command"] = cmd.name;
    m["positional"] = what;
    json c = json::object();
    for (const auto& [k, v] : cfg.values()) c[k] = v;
    m["config"] = c;
    m["outputs"] = o.outputs;
    m["results"] = o.results;
    write_json(cfg.str("out") + ".manifest.json", m);
  }
  return o.exit_code;
}

int replay(const std::string& manifest_path, const std::string& out_override) {
  const json m = read_json(manifest_path);
  std::map<std::string, std::string> values;
  try {
    if (m.at("tool") != "tflp") throw UsageError(manifest_path + ": not a tflp manifest");
    for (const auto& [k, v] : m.at("config").items()) values[k] = v.get<std::string>();
    const Command& cmd = find_command(m.at("command").get<std::string>());
    std::map<std::string, std::string> none;
    Config cfg = resolve(cmd.options, values, none);
    if (!out_override.empty()) cfg.set("out", out_override);
    return execute(cmd, m.at("positional").get<std::string>(), cfg);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(manifest_path + ": malformed manifest (" + e.what() + ")");
  }
}

}  // namespace cli
