#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "commands.hpp"
#include "io.hpp"
#include "tflp/analytics.hpp"
#include "tflp/process_sim.hpp"
#include "tflp/stoch_integration.hpp"
#include "tflp/tempered_calculus.hpp"

namespace cli {

namespace {

struct Check {
  std::string suite, name;
  double measured, expected, tol;
  bool pass;
};

Check within(const std::string& suite, const std::string& name, double measured, double expected, double tol) {
  return {suite, name, measured, expected, tol, std::abs(measured - expected) <= tol};
}

Check below(const std::string& suite, const std::string& name, double measured, double bound) {
  return {suite, name, measured, 0.0, bound, measured <= bound};
}

std::string num(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", v);
  return b;
}

struct Budget {
  bool full = false;
  long draws = 0;
  std::uint64_t seed = 1;
};

void calculus(const Budget& b, std::vector<Check>& out) {
  const double dx = std::ldexp(1.0, b.full ? -9 : -7);
  const tflp::SampleGrid g{-8.0, 8.0, std::lround(16.0 / dx)};
  const auto f = tflp::GridFunction::sample(g, [](double x) { return std::exp(-x * x); });
  for (double kappa : {0.2, 0.5, 0.8}) {
    const double lam = 1.0;
    const auto r = tflp::frac_derivative_minus(tflp::frac_integral_minus(f, kappa, lam), kappa, lam);
    double err = 0.0;
    for (size_t i = 0; i < f.values.size(); ++i) err = std::max(err, std::abs(r.values[i] - f.values[i]));
    out.push_back(below("calculus", "D(I f) - f, kappa=" + num(kappa), err, std::pow(dx, 2.0 - kappa)));
    auto m = tflp::fourier_multiplier(f, kappa, lam, tflp::Side::minus);
    const auto dm = tflp::frac_derivative_minus(f, kappa, lam);
    for (size_t i = 0; i < m.values.size(); ++i) m.values[i] -= dm.values[i];
    out.push_back(below("calculus", "multiplier vs Marchaud L2, kappa=" + num(kappa),
                        tflp::l2_norm(m) / tflp::l2_norm(dm), std::pow(dx, 2.0 - kappa)));
  }
  const auto ab = tflp::frac_integral_minus(tflp::frac_integral_minus(f, 0.3, 1.0), 0.4, 1.0);
  const auto c = tflp::frac_integral_minus(f, 0.7, 1.0);
  double err = 0.0;
  for (size_t i = 0; i < c.values.size(); ++i) err = std::max(err, std::abs(ab.values[i] - c.values[i]));
  out.push_back(below("calculus", "semigroup I^0.3 I^0.4 = I^0.7", err, 4.0 * dx * dx));
}

// EL2 = 1 covariance as int g_s g_t, split so every singularity sits at u = 0
double quad_cov(const tflp::TemperedParams& p, double s, double t, bool second) {
  auto phi = [&](double u) {
    if (u <= 0.0) return 0.0;
    double v = std::pow(u, p.d) * std::exp(-p.lambda * u);
    if (second) v += std::pow(p.lambda, -p.d) * boost::math::tgamma_lower(p.d + 1.0, p.lambda * u);
    return v;
  };
  auto left = [&](double u) { return (phi(s + u) - phi(u)) * (phi(t + u) - phi(u)); };
  auto mid = [&](double u) { return phi(u) * phi(t - s + u); };
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  const double v = ts.integrate(left, 0.0, 1.0, 1e-14) + es.integrate([&](double u) { return left(1.0 + u); }, 1e-14) +
                   ts.integrate(mid, 0.0, s, 1e-14);
  const double gm = std::tgamma(1.0 + p.d);
  return v / (gm * gm);
}

void covariance(const Budget&, std::vector<Check>& out) {
  for (double d : {-0.3, 0.2, 0.45})
    for (double lam : {0.5, 2.0}) {
      const tflp::TemperedParams p{d, lam};
      const double q = quad_cov(p, 1.0, 2.0, false);
      out.push_back(below("covariance", "cov1(1,2) vs quadrature, d=" + num(d) + " lambda=" + num(lam),
                          std::abs(tflp::cov_tflp1(p, 1.0, 2.0, 1.0) / q - 1.0), 1e-6));
      const double t = 20.0 / lam;
      out.push_back(below("covariance", "variance plateau, d=" + num(d) + " lambda=" + num(lam),
                          std::abs(tflp::cov_tflp1(p, t, t, 1.0) / tflp::var_limit_tflp1(p, 1.0) - 1.0), 1e-5));
    }
  for (double d : {0.2, 0.45}) {
    const tflp::TemperedParams p{d, 1.0};
    const double q = quad_cov(p, 1.0, 2.0, true);
    out.push_back(below("covariance", "cov2(1,2) vs quadrature, d=" + num(d),
                        std::abs(tflp::cov_tflp2(p, 1.0, 2.0, 1.0) / q - 1.0), 1e-5));
  }
  for (double d : {-0.3, 0.3}) {
    const tflp::TemperedParams p{d, 1.0};
    const double h = 2.0;
    const double v = 0.5 * (tflp::var_increment_tflp2(p, h + 1.0) - 2.0 * tflp::var_increment_tflp2(p, h) +
                            tflp::var_increment_tflp2(p, h - 1.0));
    out.push_back(below("covariance", "acvf2 branch cut vs variogram, d=" + num(d),
                        std::abs(tflp::acvf_tfln2(p, h, 1.0) / v - 1.0), 1e-8));
  }
}

void isometry(const Budget& b, std::vector<Check>& out) {
  const long n = b.draws > 0 ? b.draws : (b.full ? 10000 : 2000);
  tflp::LevyDriverSpec drv;
  drv.kind = tflp::CompoundPoisson{1.0, tflp::UniformSymmetric{1.0}};
  tflp::TransformOptions opt;
  opt.dx = 1.0 / 128.0;
  const tflp::SampleGrid g{-4.0, 4.0, 1024};
  struct Case {
    tflp::Target target;
    double d;
  };
  for (const Case c : {Case{tflp::Target::TFLP2, 0.3}, Case{tflp::Target::TFLP2, -0.3}, Case{tflp::Target::TFLP1, -0.3},
                       Case{tflp::Target::TFLP1, 0.3}}) {
    const tflp::TemperedParams p{c.d, 1.0};
    std::vector<tflp::IntegrandTransform> T;
    std::vector<std::string> names = {"1[0,1]", "step", "gaussian", "hat", "sine"};
    T.push_back(tflp::transform_integrand(tflp::ElementaryFunction::indicator(1.0), p, c.target, opt));
    T.push_back(tflp::transform_integrand(tflp::ElementaryFunction{{-0.5, 0.0, 0.75, 2.0}, {1.0, -2.0, 0.5}}, p,
                                          c.target, opt));
    T.push_back(tflp::transform_integrand(
        tflp::GridFunction::sample(g, [](double x) { return std::exp(-x * x); }), p, c.target, opt));
    T.push_back(tflp::transform_integrand(
        tflp::GridFunction::sample(g, [](double x) { return std::max(0.0, 1.0 - std::abs(x)); }), p, c.target, opt));
    T.push_back(tflp::transform_integrand(
        tflp::GridFunction::sample(g, [](double x) { return x > 0.0 && x < 2.0 ? std::sin(M_PI * x) : 0.0; }), p,
        c.target, opt));
    const auto r = tflp::isometry_monte_carlo(T, drv, n, b.seed);
    for (size_t i = 0; i < r.size(); ++i) {
      Check k{"isometry", std::string(tflp::to_string(T[i].regime)) + " " + names[i] + " Var/(EL2 |F|^2)",
              r[i].ratio, 1.0, 3.0 * r[i].variance_se / r[i].predicted, r[i].pass};
      out.push_back(k);
    }
  }
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void spectra(const Budget& b, std::vector<Check>& out) {
  const long N = b.full ? (1L << 18) : (1L << 16);
  const tflp::TemperedParams p{0.2, 0.3};
  tflp::LevyDriverSpec drv;
  drv.kind = tflp::CompoundPoisson{1.0, tflp::UniformSymmetric{1.0}};
  const tflp::SampleGrid g{0.0, static_cast<double>(N - 1), N - 1};
  const auto x1 = tflp::PathSimulator(tflp::PathKind::TFLN1, p, g, drv, 0.0).run(b.seed);
  const auto x2 = tflp::PathSimulator(tflp::PathKind::TFLN2, p, g, drv, 0.0).run(b.seed);
  const long seg = 4096;
  const auto P1 = tflp::periodogram(x1.values, seg), P2 = tflp::periodogram(x2.values, seg);
  const double wc = std::sqrt(P1[1].omega * M_PI);
  std::vector<double> a, c;
  for (size_t k = 1; k < P1.size(); ++k)
    if (P1[k].omega >= wc / 10 && P1[k].omega <= wc * 10) {
      a.push_back(std::log(tflp::spec_density_tfln1(p, P1[k].omega)));
      c.push_back(std::log(P1[k].power));
    }
  out.push_back(within("spectra", "TFLN1 periodogram vs log h^I slope", slope(a, c), 1.0, 0.1));
  std::vector<double> lx, ly, mx, my;
  for (size_t k = 1; k < P2.size(); ++k) {
    const double w = P2[k].omega;
    if (w <= p.lambda / 3) {
      lx.push_back(std::log(w));
      ly.push_back(std::log(P2[k].power));
    }
    if (w >= 3 * p.lambda && w <= std::min(30 * p.lambda, M_PI / 2)) {
      mx.push_back(std::log(w));
      my.push_back(std::log(P2[k].power));
    }
  }
  out.push_back(below("spectra", "TFLN2 low/mid log-slope ratio", std::abs(slope(lx, ly)) / std::abs(slope(mx, my)), 0.3));
  for (const auto& q : {tflp::TemperedParams{0.2, 0.3}, tflp::TemperedParams{-0.2, 0.5}}) {
    const double H = 20.0 / q.lambda;
    std::vector<std::pair<double, double>> t1, t2;
    for (int i = 0; i <= 40; ++i) {
      const double h = 0.5 * H + 0.5 * H * i / 40.0;
      t1.emplace_back(h, tflp::acvf_tfln1(q, h, 1.0));
      t2.emplace_back(h, tflp::acvf_tfln2(q, h, 1.0));
    }
    const auto f1 = tflp::fit_semi_lrd(t1), f2 = tflp::fit_semi_lrd(t2);
    const std::string tag = ", d=" + num(q.d) + " lambda=" + num(q.lambda);
    out.push_back(within("spectra", "TFLN1 fit lambda/lambda" + tag, f1.lambda_hat / q.lambda, 1.0, 0.05));
    out.push_back(within("spectra", "TFLN1 fit delta" + tag, f1.delta_hat, q.d, 0.05));
    out.push_back(within("spectra", "TFLN2 fit delta" + tag, f2.delta_hat, q.d - 1.0, 0.1));
  }
}

}  // namespace

Outcome run_verify(const std::string& suite, const Config& cfg) {
  Budget b;
  const std::string budget = cfg.str("budget");
  if (budget != "quick" && budget != "full") throw UsageError("verify: budget must be quick or full");
  b.full = budget == "full";
  b.draws = cfg.integer("n");
  b.seed = cfg.u64("seed");
  std::vector<Check> checks;
  const bool all = suite == "all";
  if (all || suite == "calculus") calculus(b, checks);
  if (all || suite == "covariance") covariance(b, checks);
  if (all || suite == "isometry") isometry(b, checks);
  if (all || suite == "spectra") spectra(b, checks);

  Outcome o;
  int failed = 0;
  std::printf("%-11s %-48s %12s %12s %12s  %s\n", "suite", "check", "measured", "expected", "tolerance", "result");
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    std::printf("%-11s %-48s %12.5g %12.5g %12.3g  %s\n", c.suite.c_str(), c.name.c_str(), c.measured, c.expected,
                c.tol, c.pass ? "PASS" : "FAIL");
    failed += c.pass ? 0 : 1;
    rows.push_back({{"suite", c.suite},
                    {"check", c.name},
                    {"measured", c.measured},
                    {"expected", c.expected},
                    {"tolerance", c.tol},
                    {"pass", c.pass}});
  }
  std::printf("%d of %zu checks passed\n", static_cast<int>(checks.size()) - failed, checks.size());
  o.exit_code = failed ? 1 : 0;
  if (!cfg.str("out").empty()) {
    nlohmann::ordered_json j;
    j["checks"] = rows;
    j["passed"] = failed == 0;
    write_json(cfg.str("out"), j);
    o.outputs.push_back(cfg.str("out"));
    o.results["passed"] = failed == 0;
  }
  return o;
}

}  // namespace cli
