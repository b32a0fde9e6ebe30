#include "tflp/tempered_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "fft.hpp"
#include "tflp/errors.hpp"
#include "tflp/special_functions.hpp"

namespace tflp {

namespace {

using GL = boost::math::quadrature::gauss<double, 10>;

// y_j = sum_{k=0}^{n-j} c_k f_{j+k}, j = 0..n, with c and f of length n+1.
std::vector<double> tail_correlation(const std::vector<double>& c, const std::vector<double>& f) {
  const size_t np = f.size();
  std::vector<double> y(np, 0.0);
  if (np * np <= 4'000'000) {
    for (size_t j = 0; j < np; ++j) {
      double s = 0.0;
      for (size_t k = 0; j + k < np; ++k) s += c[k] * f[j + k];
      y[j] = s;
    }
    return y;
  }
  std::vector<double> g(f.rbegin(), f.rend());
  const auto conv = detail::convolve(c, g);
  for (size_t j = 0; j < np; ++j) y[j] = conv[np - 1 - j];
  return y;
}

void check_flat_end(const GridFunction& f, bool right, double tol, const char* who) {
  const auto& v = f.values;
  const size_t n = v.size();
  if (n < 2) return;
  double mx = 0.0;
  for (double x : v) mx = std::max(mx, std::abs(x));
  if (mx == 0.0) return;
  const double jump = right ? std::abs(v[n - 1] - v[n - 2]) : std::abs(v[1] - v[0]);
  if (jump > tol * mx)
    fail(ErrorKind::tolerance, std::string(who) + ": grid too narrow, f is not flat at the " +
                                   (right ? "right" : "left") + " end (relative step " +
                                   std::to_string(jump / mx) + ")");
}

GridFunction reversed_values(const GridFunction& f) {
  GridFunction r = f;
  std::reverse(r.values.begin(), r.values.end());
  return r;
}

}  // namespace

void GridFunction::validate() const {
  grid.validate();
  require(values.size() == static_cast<size_t>(grid.n_points()), ErrorKind::length,
          "GridFunction: values must have n_cells + 1 entries");
  for (double v : values) require(std::isfinite(v), ErrorKind::parameter, "GridFunction: non-finite value");
}

GridFunction GridFunction::sample(const SampleGrid& grid, const std::function<double(double)>& f) {
  grid.validate();
  GridFunction g{grid, std::vector<double>(static_cast<size_t>(grid.n_points()))};
  for (long k = 0; k < grid.n_points(); ++k) g.values[static_cast<size_t>(k)] = f(grid.x(k));
  return g;
}

GridFunction frac_integral_minus(const GridFunction& f, double kappa, double lambda, const CalculusOptions& opt) {
  f.validate();
  require(kappa > 0.0, ErrorKind::parameter, "frac_integral: kappa must be > 0");
  require(lambda > 0.0, ErrorKind::parameter, "frac_integral: lambda must be > 0");
  check_flat_end(f, true, opt.flat_tolerance, "frac_integral_minus");
  const long n = f.grid.n_cells;
  const double h = f.grid.dx();
  const double gk = std::tgamma(kappa);
  // a_m, b_m: weights of f at the left and right node of lag cell m
  std::vector<double> a(static_cast<size_t>(n) + 1), b(static_cast<size_t>(n) + 1);
  {
    const double A0 = lower_gamma(kappa, lambda * h) / std::pow(lambda, kappa);
    const double U0 = lower_gamma(kappa + 1.0, lambda * h) / std::pow(lambda, kappa + 1.0);
    b[0] = U0 / h / gk;
    a[0] = A0 / gk - b[0];
  }
  for (long m = 1; m <= n; ++m) {
    const double lo = m * h, hi = (m + 1) * h;
    const double A = GL::integrate([&](double u) { return std::pow(u, kappa - 1.0) * std::exp(-lambda * u); }, lo, hi);
    const double W = GL::integrate(
        [&](double u) { return (u - lo) / h * std::pow(u, kappa - 1.0) * std::exp(-lambda * u); }, lo, hi);
    b[static_cast<size_t>(m)] = W / gk;
    a[static_cast<size_t>(m)] = (A - W) / gk;
  }
  std::vector<double> c(static_cast<size_t>(n) + 1);
  c[0] = a[0];
  for (size_t k = 1; k < c.size(); ++k) c[k] = a[k] + b[k - 1];
  auto y = tail_correlation(c, f.values);
  const double fn = f.values.back();
  for (long j = 0; j <= n; ++j) {
    const long M = n - j;
    const double tail = boost::math::gamma_q(kappa, lambda * M * h) / std::pow(lambda, kappa);
    y[static_cast<size_t>(j)] += fn * (tail - a[static_cast<size_t>(M)]);
  }
  return {f.grid, std::move(y)};
}

GridFunction frac_integral_plus(const GridFunction& f, double kappa, double lambda, const CalculusOptions& opt) {
  return reversed_values(frac_integral_minus(reversed_values(f), kappa, lambda, opt));
}

GridFunction frac_derivative_minus(const GridFunction& f, double kappa, double lambda, const CalculusOptions& opt) {
  f.validate();
  require(kappa > 0.0 && kappa < 1.0, ErrorKind::domain, "frac_derivative: kappa must lie in (0, 1)");
  require(lambda > 0.0, ErrorKind::parameter, "frac_derivative: lambda must be > 0");
  check_flat_end(f, true, opt.flat_tolerance, "frac_derivative_minus");
  const long n = f.grid.n_cells;
  const double h = f.grid.dx();
  const double lk = std::pow(lambda, kappa);
  // C_m = int_cell u^{-kappa-1} e^{-lambda u}, e_m = int_cell (u - m h)/h u^{-kappa-1} e^{-lambda u};
  // on cell 0 only e_0 = int_0^h u^{-kappa} e^{-lambda u} / h enters.
  std::vector<double> C(static_cast<size_t>(n) + 1, 0.0), e(static_cast<size_t>(n) + 1);
  e[0] = lower_gamma(1.0 - kappa, lambda * h) * std::pow(lambda, kappa - 1.0) / h;
  for (long m = 1; m <= n; ++m) {
    const double lo = m * h, hi = (m + 1) * h;
    C[static_cast<size_t>(m)] =
        GL::integrate([&](double u) { return std::pow(u, -kappa - 1.0) * std::exp(-lambda * u); }, lo, hi);
    e[static_cast<size_t>(m)] = GL::integrate(
        [&](double u) { return (u - lo) / h * std::pow(u, -kappa - 1.0) * std::exp(-lambda * u); }, lo, hi);
  }
  std::vector<double> w(static_cast<size_t>(n) + 1);
  w[0] = e[0];
  for (size_t k = 1; k < w.size(); ++k) w[k] = -C[k] + e[k] - e[k - 1];
  auto y = tail_correlation(w, f.values);
  const double fn = f.values.back();
  const double near = lk * upper_gamma(-kappa, lambda * h);
  const double pref = kappa / std::tgamma(1.0 - kappa);
  std::vector<double> out(static_cast<size_t>(n) + 1);
  for (long j = 0; j <= n; ++j) {
    const size_t J = static_cast<size_t>(j);
    if (j == n) {
      out[J] = lk * fn;
      continue;
    }
    const long M = n - j;
    const double far = lk * upper_gamma(-kappa, lambda * M * h);
    const double corr = (e[static_cast<size_t>(M)] - C[static_cast<size_t>(M)]) * fn;
    out[J] = lk * f.values[J] + pref * (f.values[J] * near + y[J] - corr - fn * far);
  }
  return {f.grid, std::move(out)};
}

GridFunction frac_derivative_plus(const GridFunction& f, double kappa, double lambda, const CalculusOptions& opt) {
  return reversed_values(frac_derivative_minus(reversed_values(f), kappa, lambda, opt));
}

GridFunction fourier_multiplier(const GridFunction& f, double kappa, double lambda, Side sign) {
  f.validate();
  require(kappa > 0.0, ErrorKind::parameter, "fourier_multiplier: kappa must be > 0");
  require(lambda > 0.0, ErrorKind::parameter, "fourier_multiplier: lambda must be > 0");
  const size_t np = f.values.size();
  const size_t N = detail::next_fast_size(2 * np);
  const double h = f.grid.dx();
  const double sgn = sign == Side::minus ? -1.0 : 1.0;
  auto y = detail::spectral_apply(f.values, N, [&](size_t k) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(k) / (static_cast<double>(N) * h);
    return std::pow(std::complex<double>(lambda, sgn * w), kappa);
  });
  return {f.grid, std::move(y)};
}

double sobolev_norm(const GridFunction& f, double kappa, double lambda) {
  f.validate();
  require(kappa >= 0.0, ErrorKind::parameter, "sobolev_norm: kappa must be >= 0");
  require(lambda > 0.0, ErrorKind::parameter, "sobolev_norm: lambda must be > 0");
  const size_t np = f.values.size();
  const size_t N = detail::next_fast_size(2 * np);
  const double h = f.grid.dx();
  const auto pw = detail::power_spectrum(f.values, N);
  double s = 0.0;
  for (size_t k = 0; k < pw.size(); ++k) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(k) / (static_cast<double>(N) * h);
    const double mult = (k == 0 || 2 * k == N) ? 1.0 : 2.0;
    s += mult * pw[k] * std::pow(lambda * lambda + w * w, kappa);
  }
  return std::sqrt(s * h / static_cast<double>(N));
}

double l2_inner(const GridFunction& f, const GridFunction& g) {
  require(f.values.size() == g.values.size() && f.grid.x_min == g.grid.x_min && f.grid.x_max == g.grid.x_max,
          ErrorKind::length, "l2_inner: grids differ");
  const size_t n = f.values.size();
  std::vector<double> p(n);
  for (size_t i = 0; i < n; ++i) p[i] = f.values[i] * g.values[i];
  p.front() *= 0.5;
  p.back() *= 0.5;
  double s = 0.0;
  for (double v : p) s += v;
  return s * f.grid.dx();
}

double l2_norm(const GridFunction& f) { return std::sqrt(std::max(0.0, l2_inner(f, f))); }

GridFunction reflect(const GridFunction& f) {
  GridFunction r = reversed_values(f);
  r.grid.x_min = -f.grid.x_max;
  r.grid.x_max = -f.grid.x_min;
  return r;
}

}  // namespace tflp
