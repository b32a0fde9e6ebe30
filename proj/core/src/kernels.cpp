#include "kernels.hpp"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "tflp/special_functions.hpp"

namespace tflp::detail {

double Kernel::phi(double u) const {
  if (u <= 0.0) return 0.0;
  const double p = d == 0.0 ? std::exp(-lambda * u) : std::pow(u, d) * std::exp(-lambda * u);
  if (kind == KernelKind::first) return p;
  return p + std::pow(lambda, -d) * lower_gamma(d + 1.0, lambda * u);
}

double Kernel::rho(double u) const {
  if (u <= 0.0) return 0.0;
  const double p = d == 0.0 ? std::exp(-lambda * u) : std::pow(u, d) * std::exp(-lambda * u);
  return p - std::pow(lambda, -d) * upper_gamma(d + 1.0, lambda * u);
}

double Kernel::step() const {
  return kind == KernelKind::first ? 0.0 : std::pow(lambda, -d) * std::tgamma(d + 1.0);
}

namespace {

// int_a^b u^d e^{-lambda u} du, 0 <= a < b
double power_exp_integral(double d, double lambda, double a, double b) {
  const double s = d + 1.0;
  const double ls = std::pow(lambda, -s);
  if (lambda * a < s) return ls * (lower_gamma(s, lambda * b) - lower_gamma(s, lambda * a));
  return ls * (boost::math::tgamma(s, lambda * a) - boost::math::tgamma(s, lambda * b));
}

// int_a^b Gamma(s, lambda u) du, 0 <= a < b
double upper_gamma_integral(double s, double lambda, double a, double b) {
  if (lambda * a < s) {
    auto A = [&](double u) {
      return u * lower_gamma(s, lambda * u) - lower_gamma(s + 1.0, lambda * u) / lambda;
    };
    return std::tgamma(s) * (b - a) - (A(b) - A(a));
  }
  auto A = [&](double u) {
    return u * boost::math::tgamma(s, lambda * u) - boost::math::tgamma(s + 1.0, lambda * u) / lambda;
  };
  return A(b) - A(a);
}

}  // namespace

double Kernel::decaying_integral(double a, double b) const {
  a = std::max(a, 0.0);
  if (b <= a) return 0.0;
  const double p = power_exp_integral(d, lambda, a, b);
  if (kind == KernelKind::first) return p;
  return p - std::pow(lambda, -d) * upper_gamma_integral(d + 1.0, lambda, a, b);
}

double Kernel::phi_integral(double a, double b) const {
  a = std::max(a, 0.0);
  if (b <= a) return 0.0;
  return decaying_integral(a, b) + step() * (b - a);
}

std::vector<double> decaying_cell_averages(const Kernel& k, double h, long count) {
  std::vector<double> out(static_cast<size_t>(count));
  for (long m = 0; m < count; ++m) out[static_cast<size_t>(m)] = k.decaying_integral(m * h, (m + 1) * h) / h;
  return out;
}

double truncation_width(double d, double lambda, double tol) {
  const double p = std::max(d, 0.0);
  auto bound = [&](double R) { return -lambda * R + p * std::log(std::max(R, 1.0)); };
  const double target = std::log(tol);
  // bound decreases for R beyond max(1, p / lambda)
  double lo = p > 0.0 ? std::max(1.0, p / lambda) : 0.0;
  if (bound(lo) < target) return lo;
  double hi = 2.0 * std::max(lo, 1.0 / lambda);
  while (bound(hi) >= target) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (bound(mid) < target) hi = mid; else lo = mid;
  }
  return hi;
}

}  // namespace tflp::detail
