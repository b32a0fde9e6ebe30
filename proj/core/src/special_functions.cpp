#include "tflp/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "tflp/errors.hpp"

namespace tflp {

double gamma_fn(double x) {
  require(std::isfinite(x), ErrorKind::domain, "gamma_fn: non-finite argument");
  if (x <= 0.0 && x == std::floor(x))
    fail(ErrorKind::domain, "gamma_fn: pole at x = " + std::to_string(x));
  const double g = std::tgamma(x);
  if (!std::isfinite(g)) fail(ErrorKind::overflow, "gamma_fn: overflow at x = " + std::to_string(x));
  return g;
}

namespace {

constexpr double kEps = 1e-16;

// K_mu(x), K_{mu+1}(x) for |mu| <= 1/2, both multiplied by e^x when scaled.
// Temme's series for x <= 2, Steed's continued fraction otherwise.
void temme_pair(double mu, double x, bool scaled, double& k_mu, double& k_mu1) {
  const double pi = std::numbers::pi;
  if (x <= 2.0) {
    const double x2 = 0.5 * x;
    const double pimu = pi * mu;
    const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
    // 1/Gamma(1 -+ mu) through tgamma1pm1 keeps gam1 accurate near mu = 0.
    const double tp = boost::math::tgamma1pm1(mu);
    const double tm = boost::math::tgamma1pm1(-mu);
    const double gampl = 1.0 / (1.0 + tp);
    const double gammi = 1.0 / (1.0 + tm);
    double gam1;
    if (std::abs(mu) < 1e-8) {
      gam1 = -std::numbers::egamma;
    } else {
      gam1 = (tp - tm) / ((1.0 + tp) * (1.0 + tm)) / (2.0 * mu);
    }
    const double gam2 = 0.5 * (gammi + gampl);
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / gampl;
    double q = 0.5 / (e * gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    for (int i = 1; i < 500; ++i) {
      ff = (i * ff + p + q) / (i * static_cast<double>(i) - mu * mu);
      c *= d / i;
      p /= (i - mu);
      q /= (i + mu);
      const double del = c * ff;
      sum += del;
      const double del1 = c * (p - i * ff);
      sum1 += del1;
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    const double s = scaled ? std::exp(x) : 1.0;
    k_mu = sum * s;
    k_mu1 = sum1 * (2.0 / x) * s;
    return;
  }
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25 - mu * mu;
  double q = a1, c = a1, a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < 100000; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h = a1 * h;
  k_mu = std::sqrt(pi / (2.0 * x)) / s;
  if (!scaled) k_mu *= std::exp(-x);
  k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
}

double bessel_k_impl(double nu, double z, bool scaled) {
  require(std::isfinite(nu), ErrorKind::domain, "bessel_k: non-finite order");
  if (!(z > 0.0)) fail(ErrorKind::domain, "bessel_k: requires z > 0");
  nu = std::abs(nu);
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  double k0, k1;
  temme_pair(mu, z, scaled, k0, k1);
  const double xi2 = 2.0 / z;
  for (int i = 1; i <= nl; ++i) {
    const double kn = (mu + i) * xi2 * k1 + k0;
    k0 = k1;
    k1 = kn;
  }
  return k0;
}

}  // namespace

double bessel_k(double nu, double z) { return bessel_k_impl(nu, z, false); }

double bessel_k_scaled(double nu, double z) { return bessel_k_impl(nu, z, true); }

double lower_gamma(double s, double x) {
  require(s > 0.0, ErrorKind::domain, "lower_gamma: requires s > 0");
  if (x <= 0.0) return 0.0;
  return boost::math::tgamma_lower(s, x);
}

double upper_gamma(double s, double x) {
  require(x > 0.0 || (x == 0.0 && s > 0.0), ErrorKind::domain, "upper_gamma: requires x > 0");
  if (s > 0.0) return boost::math::tgamma(s, x);
  if (x == 0.0) return std::numeric_limits<double>::infinity();
  // Gamma(s, x) = (Gamma(s + 1, x) - x^s e^{-x}) / s, stepped down from s + n > 0.
  int n = static_cast<int>(std::floor(-s)) + 1;
  double base = s + n;  // in (0, 1]
  double g;
  if (std::abs(base - 1.0) < 1e-15 && s == std::floor(s)) {
    base = 0.0;
    --n;
    g = boost::math::expint(1, x);
  } else {
    g = boost::math::tgamma(base, x);
  }
  for (double a = base - 1.0; n > 0; a -= 1.0, --n) g = (g - std::pow(x, a) * std::exp(-x)) / a;
  return g;
}

}  // namespace tflp
