#include "tflp/stoch_integration.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fft.hpp"
#include "kernels.hpp"
#include "tflp/analytics.hpp"
#include "tflp/errors.hpp"
#include "tflp/parallel.hpp"

namespace tflp {

void ElementaryFunction::validate() const {
  require(!coefficients.empty() && breakpoints.size() == coefficients.size() + 1, ErrorKind::length,
          "ElementaryFunction: need n >= 1 coefficients and n + 1 breakpoints");
  for (size_t i = 0; i < breakpoints.size(); ++i) {
    require(std::isfinite(breakpoints[i]), ErrorKind::parameter, "ElementaryFunction: non-finite breakpoint");
    if (i > 0)
      require(breakpoints[i] > breakpoints[i - 1], ErrorKind::parameter,
              "ElementaryFunction: breakpoints must be strictly increasing");
  }
  for (double a : coefficients)
    require(std::isfinite(a), ErrorKind::parameter, "ElementaryFunction: non-finite coefficient");
}

double ElementaryFunction::operator()(double x) const {
  if (x < breakpoints.front() || x >= breakpoints.back()) return 0.0;
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  return coefficients[static_cast<size_t>(it - breakpoints.begin()) - 1];
}

ElementaryFunction ElementaryFunction::indicator(double t) {
  require(std::isfinite(t) && t != 0.0, ErrorKind::parameter, "indicator: t must be finite and nonzero");
  if (t > 0.0) return {{0.0, t}, {1.0}};
  return {{t, 0.0}, {-1.0}};
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::A1: return "A1";
    case Regime::A2: return "A2";
    case Regime::A3: return "A3";
    case Regime::A4: return "A4";
  }
  return "?";
}

const char* to_string(Target t) { return t == Target::TFLP1 ? "tflp1" : "tflp2"; }

Regime regime_for(const TemperedParams& p, Target target) {
  p.validate();
  if (target == Target::TFLP2) {
    require(p.d != 0.0, ErrorKind::parameter, "TFLP II integrands require d != 0");
    return p.d > 0.0 ? Regime::A1 : Regime::A2;
  }
  require(p.d != 0.0 && p.d < 0.5, ErrorKind::parameter, "TFLP integrands require -1/2 < d < 1/2, d != 0");
  return p.d > 0.0 ? Regime::A4 : Regime::A3;
}

namespace {

detail::Kernel kernel_for(const TemperedParams& p, Target target) {
  return {target == Target::TFLP2 ? detail::KernelKind::second : detail::KernelKind::first, p.d, p.lambda};
}

double variogram(const TemperedParams& p, Target target, double tau) {
  return target == Target::TFLP2 ? var_increment_tflp2(p, tau) : var_increment_tflp1(p, tau);
}

// c_j = a_{j-1} - a_j, so that the integral of f is sum_j c_j S(t_j)
std::vector<double> jumps_of(const ElementaryFunction& f) {
  const size_t n = f.coefficients.size();
  std::vector<double> c(n + 1);
  for (size_t j = 0; j <= n; ++j) {
    const double before = j > 0 ? f.coefficients[j - 1] : 0.0;
    const double after = j < n ? f.coefficients[j] : 0.0;
    c[j] = before - after;
  }
  return c;
}

// <Tf, Tg> = -1/2 sum_jk c_j e_k V(t_j - s_k), using sum c = sum e = 0
double elementary_inner(const ElementaryFunction& f, const ElementaryFunction& g, const TemperedParams& p,
                        Target target) {
  const auto c = jumps_of(f), e = jumps_of(g);
  std::map<double, double> cache;
  auto V = [&](double tau) {
    tau = std::abs(tau);
    if (tau == 0.0) return 0.0;
    auto it = cache.find(tau);
    if (it != cache.end()) return it->second;
    const double v = variogram(p, target, tau);
    cache.emplace(tau, v);
    return v;
  };
  double s = 0.0;
  for (size_t j = 0; j < c.size(); ++j)
    for (size_t k = 0; k < e.size(); ++k) s += c[j] * e[k] * V(f.breakpoints[j] - g.breakpoints[k]);
  return -0.5 * s;
}

// (1/Gamma(d+1)) sum_j c_j phi(t_j - y) with the constant part of phi summed separately
double elementary_value(const ElementaryFunction& f, const std::vector<double>& c, const detail::Kernel& ker,
                        double inv_gamma, double y) {
  double dec = 0.0, stp = 0.0;
  for (size_t j = 0; j < c.size(); ++j) {
    const double u = f.breakpoints[j] - y;
    if (u > 0.0) {
      dec += c[j] * ker.decaying(u);
      stp += c[j];
    }
  }
  return (dec + ker.step() * stp) * inv_gamma;
}

GridFunction axpy(double a, const GridFunction& x, const GridFunction& y) {
  GridFunction out = y;
  for (size_t i = 0; i < out.values.size(); ++i) out.values[i] += a * x.values[i];
  return out;
}

}  // namespace

IntegrandTransform transform_integrand(const GridFunction& f, const TemperedParams& p, Target target,
                                       const TransformOptions& opt) {
  f.validate();
  IntegrandTransform out;
  out.regime = regime_for(p, target);
  out.target = target;
  out.params = p;
  const double h = f.grid.dx();
  const double R = detail::truncation_width(p.d, p.lambda, opt.tolerance);
  const long pad_left = static_cast<long>(std::ceil(R / h));
  const long pad_right = 2;
  GridFunction g;
  g.grid.x_min = f.grid.x(-pad_left);
  g.grid.x_max = f.grid.x(f.grid.n_cells + pad_right);
  g.grid.n_cells = f.grid.n_cells + pad_left + pad_right;
  g.values.assign(static_cast<size_t>(g.grid.n_points()), 0.0);
  std::copy(f.values.begin(), f.values.end(), g.values.begin() + pad_left);

  const double d = p.d, lam = p.lambda;
  const auto& co = opt.calculus;
  switch (out.regime) {
    case Regime::A1:
      out.transformed = frac_integral_minus(g, d, lam, co);
      break;
    case Regime::A2:
      out.transformed = frac_derivative_minus(g, -d, lam, co);
      break;
    case Regime::A3:
      out.transformed = axpy(-lam, frac_integral_minus(g, d + 1.0, lam, co), frac_derivative_minus(g, -d, lam, co));
      break;
    case Regime::A4:
      out.transformed = axpy(-lam, frac_integral_minus(g, d + 1.0, lam, co), frac_integral_minus(g, d, lam, co));
      break;
  }
  out.norm = l2_norm(out.transformed);
  return out;
}

IntegrandTransform transform_integrand(const ElementaryFunction& f, const TemperedParams& p, Target target,
                                       const TransformOptions& opt) {
  f.validate();
  require(opt.dx > 0.0, ErrorKind::parameter, "transform_integrand: dx must be > 0");
  IntegrandTransform out;
  out.regime = regime_for(p, target);
  out.target = target;
  out.params = p;
  out.source = f;
  const double h = opt.dx;
  const double R = detail::truncation_width(p.d, p.lambda, opt.tolerance);
  const double klo = std::floor((f.breakpoints.front() - R) / h);
  const double khi = std::ceil(f.breakpoints.back() / h) + 1.0;
  out.transformed.grid.x_min = klo * h;
  out.transformed.grid.x_max = khi * h;
  out.transformed.grid.n_cells = static_cast<long>(khi - klo);
  const auto ker = kernel_for(p, target);
  const auto c = jumps_of(f);
  const double ig = 1.0 / std::tgamma(1.0 + p.d);
  out.transformed.values.resize(static_cast<size_t>(out.transformed.grid.n_points()));
  for (long k = 0; k < out.transformed.grid.n_points(); ++k)
    out.transformed.values[static_cast<size_t>(k)] = elementary_value(f, c, ker, ig, out.transformed.x(k));
  out.norm = std::sqrt(std::max(0.0, elementary_inner(f, f, p, target)));
  return out;
}

double inner_product(const IntegrandTransform& f, const IntegrandTransform& g) {
  require(f.regime == g.regime && f.target == g.target && f.params.d == g.params.d &&
              f.params.lambda == g.params.lambda,
          ErrorKind::parameter, "inner_product: transforms belong to different regimes");
  if (f.source && g.source) return elementary_inner(*f.source, *g.source, f.params, f.target);
  const auto& a = f.transformed;
  const auto& b = g.transformed;
  const double h = a.grid.dx();
  require(std::abs(b.grid.dx() - h) <= 1e-12 * h, ErrorKind::alignment, "inner_product: grid steps differ");
  const double off = (b.grid.x_min - a.grid.x_min) / h;
  const long shift = std::lround(off);
  require(std::abs(off - shift) < 1e-6, ErrorKind::alignment, "inner_product: grids are not on a common lattice");
  // index i on a corresponds to i - shift on b
  const long lo = std::max(0L, shift), hi = std::min(a.grid.n_cells, b.grid.n_cells + shift);
  if (hi < lo) return 0.0;
  std::vector<double> prod(static_cast<size_t>(hi - lo + 1));
  for (long i = lo; i <= hi; ++i) {
    double v = a.values[static_cast<size_t>(i)] * b.values[static_cast<size_t>(i - shift)];
    if (i == lo || i == hi) v *= 0.5;
    prod[static_cast<size_t>(i - lo)] = v;
  }
  return h * pairwise_sum(prod);
}

double integrate_elementary(const ElementaryFunction& f, const SamplePath& path) {
  f.validate();
  const double h = path.grid.dx();
  auto value_at = [&](double t) {
    std::int64_t k = 0;
    require(lattice_index(t - path.grid.x_min, h, k) && k >= 0 && k <= path.grid.n_cells, ErrorKind::alignment,
            "integrate_elementary: breakpoint " + std::to_string(t) + " is not on the path grid");
    return path.values[static_cast<size_t>(k)];
  };
  double s = 0.0;
  for (size_t i = 0; i < f.coefficients.size(); ++i)
    s += f.coefficients[i] * (value_at(f.breakpoints[i + 1]) - value_at(f.breakpoints[i]));
  return s;
}

IntegralSampler::IntegralSampler(const IntegrandTransform& t, const LevyDriverSpec& driver)
    : sampler_(driver, t.transformed.grid.dx()) {
  const auto& grid = t.transformed.grid;
  const double h = grid.dx();
  std::int64_t k0 = 0;
  first_cell_ = lattice_index(grid.x_min, h, k0) ? k0 : 0;
  const long n = grid.n_cells;
  w_.resize(static_cast<size_t>(n));
  predicted_ = second_moment(driver) * t.norm * t.norm;
  if (!t.source) {
    for (long k = 0; k < n; ++k)
      w_[static_cast<size_t>(k)] = 0.5 * (t.transformed.values[static_cast<size_t>(k)] +
                                          t.transformed.values[static_cast<size_t>(k + 1)]);
    return;
  }
  const auto& f = *t.source;
  const auto ker = kernel_for(t.params, t.target);
  const auto c = jumps_of(f);
  const double ig = 1.0 / std::tgamma(1.0 + t.params.d);
  const bool singular = t.params.d < 0.0;
  boost::math::quadrature::tanh_sinh<double> ts;
  for (long k = 0; k < n; ++k) {
    const double a = grid.x(k), b = grid.x(k + 1);
    double integral = 0.0;
    for (size_t j = 0; j < c.size(); ++j) {
      const double tj = f.breakpoints[j];
      integral += c[j] * ker.phi_integral(tj - b, tj - a);
    }
    const double avg = integral * ig / h;
    double w = avg;
    if (singular) {
      // cells within a few steps to the left of a breakpoint see the u^d singularity;
      // there the weight matches the cell's mean square instead of its mean
      bool near = false;
      for (double tj : f.breakpoints) near = near || (tj > a && tj - b <= 8.0 * h);
      if (near) {
        std::vector<double> cuts{a};
        for (double tj : f.breakpoints)
          if (tj > a && tj < b) cuts.push_back(tj);
        cuts.push_back(b);
        double sq = 0.0;
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
          auto F2 = [&](double y) {
            const double v = elementary_value(f, c, ker, ig, y);
            return v * v;
          };
          sq += ts.integrate(F2, cuts[i], cuts[i + 1], 1e-10);
        }
        w = (avg < 0.0 ? -1.0 : 1.0) * std::sqrt(sq / h);
      }
    }
    w_[static_cast<size_t>(k)] = w;
  }
}

double IntegralSampler::operator()(std::uint64_t seed) const {
  std::vector<double> dL(w_.size());
  sampler_.fill(seed, first_cell_, dL);
  for (size_t i = 0; i < dL.size(); ++i) dL[i] *= w_[i];
  return pairwise_sum(dL);
}

double integrate_general(const GridFunction& f, const TemperedParams& p, const LevyDriverSpec& driver,
                         std::uint64_t seed, Target target, const TransformOptions& opt) {
  return IntegralSampler(transform_integrand(f, p, target, opt), driver)(seed);
}

double integrate_general(const ElementaryFunction& f, const TemperedParams& p, const LevyDriverSpec& driver,
                         std::uint64_t seed, Target target, const TransformOptions& opt) {
  return IntegralSampler(transform_integrand(f, p, target, opt), driver)(seed);
}

std::vector<IsometryResult> isometry_monte_carlo(const std::vector<IntegrandTransform>& transforms,
                                                 const LevyDriverSpec& driver, long n_draws,
                                                 std::uint64_t first_seed) {
  require(n_draws >= 2, ErrorKind::parameter, "isometry_monte_carlo: need at least 2 draws");
  require(!transforms.empty(), ErrorKind::length, "isometry_monte_carlo: no integrands");
  std::vector<IntegralSampler> samplers;
  samplers.reserve(transforms.size());
  for (const auto& t : transforms) samplers.emplace_back(t, driver);
  const double h = samplers.front().cell_width();
  bool shared = true;
  std::int64_t lo = samplers.front().first_cell(), hi = lo;
  for (const auto& s : samplers) {
    shared = shared && std::abs(s.cell_width() - h) <= 1e-12 * h;
    lo = std::min(lo, s.first_cell());
    hi = std::max(hi, s.first_cell() + static_cast<std::int64_t>(s.weights().size()));
  }
  const size_t m = samplers.size();
  const size_t N = static_cast<size_t>(n_draws);
  std::vector<double> vals(N * m);
  const IncrementSampler noise(driver, h);
  parallel_for(N, [&](size_t r) {
    const std::uint64_t seed = first_seed + r;
    if (!shared) {
      for (size_t i = 0; i < m; ++i) vals[r * m + i] = samplers[i](seed);
      return;
    }
    std::vector<double> dL(static_cast<size_t>(hi - lo));
    noise.fill(seed, lo, dL);
    std::vector<double> prod;
    for (size_t i = 0; i < m; ++i) {
      const auto& w = samplers[i].weights();
      const size_t off = static_cast<size_t>(samplers[i].first_cell() - lo);
      prod.resize(w.size());
      for (size_t k = 0; k < w.size(); ++k) prod[k] = w[k] * dL[off + k];
      vals[r * m + i] = pairwise_sum(prod);
    }
  });
  std::vector<IsometryResult> out(m);
  for (size_t i = 0; i < m; ++i) {
    std::vector<double> x(N);
    for (size_t r = 0; r < N; ++r) x[r] = vals[r * m + i];
    const double mean = pairwise_sum(x) / static_cast<double>(N);
    double s2 = 0.0, s4 = 0.0;
    for (double v : x) {
      const double e = (v - mean) * (v - mean);
      s2 += e;
      s4 += e * e;
    }
    auto& res = out[i];
    res.mean = mean;
    res.variance = s2 / static_cast<double>(N - 1);
    res.mean_se = std::sqrt(res.variance / static_cast<double>(N));
    const double m4 = s4 / static_cast<double>(N);
    const double m2 = s2 / static_cast<double>(N);
    res.variance_se = std::sqrt(std::max(0.0, m4 - m2 * m2) / static_cast<double>(N));
    res.predicted = samplers[i].predicted_variance();
    if (res.predicted > 0.0) {
      res.ratio = res.variance / res.predicted;
      res.pass = std::abs(res.variance - res.predicted) <= 3.0 * res.variance_se &&
                 std::abs(res.mean) <= 3.0 * res.mean_se;
    } else {
      res.ratio = res.variance == 0.0 ? 1.0 : INFINITY;
      res.pass = res.variance == 0.0;
    }
  }
  return out;
}

ElementaryApproximation approximate_by_elementary(const GridFunction& f, const TemperedParams& p, Target target,
                                                  double tol, int max_level, const TransformOptions& opt) {
  f.validate();
  require(tol > 0.0, ErrorKind::parameter, "approximate_by_elementary: tol must be > 0");
  require(max_level >= 0 && max_level < 31, ErrorKind::parameter, "approximate_by_elementary: bad level budget");
  const IntegrandTransform Tf = transform_integrand(f, p, target, opt);
  const double norm2 = Tf.norm * Tf.norm;
  const double h = f.grid.dx();
  const long n = f.grid.n_cells;
  const long pad = std::lround((f.grid.x_min - Tf.transformed.grid.x_min) / h);

  // Phi_j = (1/Gamma(d+1)) int Tf(y) phi(x_j - y) dy at the grid points x_j of f, so that
  // <Tf, T 1_{[x_a, x_b)}> = Phi_b - Phi_a
  const auto ker = kernel_for(p, target);
  const long N = Tf.transformed.grid.n_cells;
  std::vector<double> avg(static_cast<size_t>(N)), cm(static_cast<size_t>(N));
  for (long k = 0; k < N; ++k) {
    avg[static_cast<size_t>(k)] =
        0.5 * (Tf.transformed.values[static_cast<size_t>(k)] + Tf.transformed.values[static_cast<size_t>(k + 1)]);
    cm[static_cast<size_t>(k)] = ker.phi_integral(k * h, (k + 1) * h);
  }
  const auto conv = detail::convolve(avg, cm);
  const double ig = 1.0 / std::tgamma(1.0 + p.d);
  auto Phi = [&](long j) {
    const long i = j + pad - 1;
    return i < 0 ? 0.0 : conv[static_cast<size_t>(i)] * ig;
  };

  std::vector<double> vcache(static_cast<size_t>(n + 1), NAN);
  auto V = [&](long di) {
    di = std::abs(di);
    if (di == 0) return 0.0;
    double& v = vcache[static_cast<size_t>(di)];
    if (std::isnan(v)) v = variogram(p, target, di * h);
    return v;
  };

  ElementaryApproximation res;
  for (int level = 0; level <= max_level; ++level) {
    const long pieces = 1L << level;
    if (pieces > n) break;
    std::vector<long> idx(static_cast<size_t>(pieces + 1));
    for (long i = 0; i <= pieces; ++i) idx[static_cast<size_t>(i)] = i * n / pieces;
    ElementaryFunction fn;
    for (long i = 0; i <= pieces; ++i) fn.breakpoints.push_back(f.x(idx[static_cast<size_t>(i)]));
    for (long i = 0; i < pieces; ++i) {
      const long a = idx[static_cast<size_t>(i)], b = idx[static_cast<size_t>(i + 1)];
      double s = 0.0;
      for (long k = a; k < b; ++k) s += 0.5 * (f.values[static_cast<size_t>(k)] + f.values[static_cast<size_t>(k + 1)]);
      fn.coefficients.push_back(s / static_cast<double>(b - a));
    }
    const auto c = jumps_of(fn);
    double cross = 0.0;
    for (size_t j = 0; j < c.size(); ++j) cross += c[j] * Phi(idx[j]);
    double self = 0.0;
    for (size_t j = 0; j < c.size(); ++j)
      for (size_t k = 0; k < c.size(); ++k) self += c[j] * c[k] * V(idx[j] - idx[k]);
    self *= -0.5;
    const double dist = std::sqrt(std::max(0.0, norm2 - 2.0 * cross + self));
    res.history.push_back(dist);
    res.f = std::move(fn);
    res.distance = dist;
    res.level = level;
    if (dist < tol) return res;
  }
  fail(ErrorKind::tolerance, "approximate_by_elementary: distance " + std::to_string(res.distance) +
                                 " still above " + std::to_string(tol) + " after " +
                                 std::to_string(res.history.size()) + " levels");
}

ElementaryApproximation approximate_by_elementary(const ElementaryFunction& f, const TemperedParams& p,
                                                  Target target, double tol) {
  f.validate();
  regime_for(p, target);
  require(tol > 0.0, ErrorKind::parameter, "approximate_by_elementary: tol must be > 0");
  ElementaryApproximation res;
  res.f = f;
  res.history = {0.0};
  return res;
}

}  // namespace tflp
