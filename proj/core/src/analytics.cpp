#include "tflp/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <Eigen/Dense>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fft.hpp"
#include "kernels.hpp"
#include "tflp/errors.hpp"
#include "tflp/special_functions.hpp"

namespace tflp {

namespace {

constexpr double kPi = std::numbers::pi;

// Vbar(tau) = 2Gamma(1+2d)/(2 lambda)^{1+2d} - (2Gamma(1+d)/sqrt(pi)) (tau/(2 lambda))^{1/2+d} K_{1/2+d}(lambda tau)
double vbar(const TemperedParams& p, double tau) {
  tau = std::abs(tau);
  if (tau == 0.0) return 0.0;
  const double d = p.d, lam = p.lambda;
  const double nu = 0.5 + d;
  const double z = lam * tau;
  const double B0 = 2.0 * std::tgamma(1.0 + 2.0 * d) / std::pow(2.0 * lam, 1.0 + 2.0 * d);
  const double P = 2.0 * std::tgamma(1.0 + d) / std::sqrt(kPi) * std::pow(2.0 * lam * lam, -nu);
  const double frac = std::abs(nu - std::nearbyint(nu));
  if (z < 1e-3 && frac > 1e-3) {
    // z^nu K_nu(z) through the I_{-nu}, I_nu series with the k = 0 term of I_{-nu} (equal to B0/P) removed
    const double pref = kPi / (2.0 * std::sin(nu * kPi));
    const double q = 0.25 * z * z;
    double s1 = 0.0, term = 1.0;
    for (int k = 1; k < 30; ++k) {
      term *= q / k;
      const double add = std::pow(2.0, nu) * term / std::tgamma(k - nu + 1.0);
      s1 += add;
      if (std::abs(add) < 1e-18 * std::abs(s1)) break;
    }
    double s2 = 0.0;
    term = 1.0;
    for (int k = 0; k < 30; ++k) {
      if (k > 0) term *= q / k;
      const double add = std::pow(2.0, -nu) * std::pow(z, 2.0 * nu) * term / std::tgamma(k + nu + 1.0);
      s2 += add;
      if (std::abs(add) < 1e-18 * std::abs(s2)) break;
    }
    return -P * pref * (s1 - s2);
  }
  double B;
  if (z > 30.0) {
    B = P * std::exp(nu * std::log(z) - z) * bessel_k_scaled(nu, z);
  } else {
    B = P * std::pow(z, nu) * bessel_k(nu, z);
  }
  return B0 - B;
}

// B(tau) = B0 - Vbar(tau), the decaying part; evaluated directly for the acvf at lags >= 1
double bpart(const TemperedParams& p, double tau) {
  const double nu = 0.5 + p.d, z = p.lambda * std::abs(tau);
  const double P = 2.0 * std::tgamma(1.0 + p.d) / std::sqrt(kPi) * std::pow(2.0 * p.lambda * p.lambda, -nu);
  return P * std::exp(nu * std::log(z) - z) * bessel_k_scaled(nu, z);
}

// M(x) = int_0^x (x - r) r^{d-1/2} K_{d-1/2}(lambda r) dr
double m_tflp2(const TemperedParams& p, double x) {
  x = std::abs(x);
  if (x == 0.0) return 0.0;
  const double nu = p.d - 0.5, lam = p.lambda;
  const double top = std::min(x, 80.0 / lam);
  auto k = [&](double r) {
    if (r <= 0.0) return 0.0;
    const double z = lam * r;
    return (x - r) * std::exp(nu * std::log(r) - z) * bessel_k_scaled(nu, z);
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  double err = 0.0;
  const double v = ts.integrate(k, 0.0, top, 1e-13, &err);
  if (!(err <= 1e-8 * std::abs(v) + 1e-300))
    fail(ErrorKind::tolerance, "cov_tflp2: quadrature tolerance not met");
  return v;
}

// int g^II(tau, y)^2 dy by quadrature on the pieces (-inf, 0) and (0, tau)
double g2_square_integral(const TemperedParams& p, double tau) {
  const detail::Kernel ker{detail::KernelKind::second, p.d, p.lambda};
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  const double s = 1.0 / p.lambda;
  auto left = [&](double u) {  // y = -u
    const double g = ker.rho(tau + u) - ker.rho(u);
    return g * g;
  };
  auto inner = [&](double v) {  // v = tau - y in (0, tau)
    const double g = ker.phi(v);
    return g * g;
  };
  double e1 = 0, e2 = 0, e3 = 0;
  const double a = ts.integrate(left, 0.0, s, 1e-12, &e1);
  const double b = es.integrate([&](double u) { return left(s + u); }, 1e-12, &e2);
  const double c = ts.integrate(inner, 0.0, tau, 1e-12, &e3);
  const double total = a + b + c;
  if (!(e1 + e2 + e3 <= 1e-7 * total))
    fail(ErrorKind::tolerance, "var_increment_tflp2: quadrature tolerance not met");
  return total;
}

}  // namespace

double ct_squared(const TemperedParams& p, double t) {
  p.validate();
  if (t == 0.0) return 0.0;
  return vbar(p, t) / std::pow(std::abs(t), 1.0 + 2.0 * p.d);
}

double var_increment_tflp1(const TemperedParams& p, double tau) {
  p.validate();
  const double g = std::tgamma(1.0 + p.d);
  return vbar(p, tau) / (g * g);
}

double var_increment_tflp2(const TemperedParams& p, double tau) {
  p.validate();
  require(p.d != 0.0, ErrorKind::parameter, "TFLP II requires d != 0");
  if (tau == 0.0) return 0.0;
  tau = std::abs(tau);
  if (p.d > 0.0) {
    const double c = 1.0 / (std::sqrt(kPi) * std::tgamma(p.d) * std::pow(2.0 * p.lambda, p.d - 0.5));
    return 2.0 * c * m_tflp2(p, tau);
  }
  const double g = std::tgamma(1.0 + p.d);
  return g2_square_integral(p, tau) / (g * g);
}

double cov_tflp1(const TemperedParams& p, double s, double t, double el2) {
  p.validate();
  const double g = std::tgamma(1.0 + p.d);
  return el2 / (2.0 * g * g) * (vbar(p, t) + vbar(p, s) - vbar(p, t - s));
}

double var_limit_tflp1(const TemperedParams& p, double el2) {
  p.validate();
  const double g = std::tgamma(1.0 + p.d);
  return 2.0 * el2 * std::tgamma(1.0 + 2.0 * p.d) / (g * g * std::pow(2.0 * p.lambda, 1.0 + 2.0 * p.d));
}

double cov_tflp2(const TemperedParams& p, double s, double t, double el2) {
  p.validate();
  require(p.d > 0.0, ErrorKind::parameter, "cov_tflp2: closed form requires d > 0");
  const double c = el2 / (std::sqrt(kPi) * std::tgamma(p.d) * std::pow(2.0 * p.lambda, p.d - 0.5));
  return c * (m_tflp2(p, t) + m_tflp2(p, s) - m_tflp2(p, t - s));
}

double acvf_tfln1(const TemperedParams& p, double h, double el2) {
  p.validate();
  h = std::abs(h);
  const double g = std::tgamma(1.0 + p.d);
  const double k = el2 / (2.0 * g * g);
  if (h >= 1.0) {
    const double lo = h - 1.0;
    const double blo = lo == 0.0 ? 2.0 * std::tgamma(1.0 + 2.0 * p.d) / std::pow(2.0 * p.lambda, 1.0 + 2.0 * p.d)
                                 : bpart(p, lo);
    return -k * (bpart(p, h + 1.0) - 2.0 * bpart(p, h) + blo);
  }
  return k * (vbar(p, h + 1.0) - 2.0 * vbar(p, h) + vbar(p, h - 1.0));
}

double acvf_tfln1_asymptotic(const TemperedParams& p, double h, double el2) {
  p.validate();
  const double C = -el2 * p.lambda * p.lambda / (std::tgamma(p.d + 1.0) * std::pow(2.0 * p.lambda, p.d + 1.0));
  return C * std::exp(-p.lambda * h) * std::pow(h, p.d);
}

double acvf_tfln2(const TemperedParams& p, double h, double el2) {
  p.validate();
  require(p.d != 0.0, ErrorKind::parameter, "TFLP II requires d != 0");
  h = std::abs(h);
  const double d = p.d, lam = p.lambda;
  if (h >= 1.0 && d < 1.0) {
    // (2 sin(pi d)/pi) int_lambda^inf e^{-h y}(cosh y - 1) / (y^2 (y^2 - lambda^2)^d) dy with y = lambda + u;
    // e^{-lambda h} is factored out
    auto f = [&](double u) {
      if (u <= 0.0) return 0.0;
      const double y = lam + u;
      const double om = -std::expm1(-y);
      const double num = 0.5 * std::exp(lam - (h - 1.0) * u) * om * om;
      return num / (y * y * std::pow(u * (2.0 * lam + u), d));
    };
    boost::math::quadrature::exp_sinh<double> es;
    boost::math::quadrature::tanh_sinh<double> ts;
    double e1 = 0.0, e2 = 0.0;
    const double split = 1.0;
    const double a = ts.integrate(f, 0.0, split, 1e-12, &e1);
    const double b = es.integrate([&](double u) { return f(split + u); }, 1e-12, &e2);
    const double val = 2.0 * std::sin(kPi * d) / kPi * (a + b);
    return el2 * std::exp(-lam * h) * val;
  }
  return 0.5 * el2 *
         (var_increment_tflp2(p, h + 1.0) - 2.0 * var_increment_tflp2(p, h) + var_increment_tflp2(p, h - 1.0));
}

double acvf_tfln2_limit_constant(const TemperedParams& p, double el2) {
  const double d = p.d, lam = p.lambda;
  return el2 * 2.0 * std::sin(kPi * d) / kPi * std::tgamma(1.0 - d) * (std::cosh(lam) - 1.0) /
         (lam * lam * std::pow(2.0 * lam, d));
}

double AcvfBand::lower(const TemperedParams& p, double h) const {
  return c1 * std::exp(-p.lambda * h) * std::pow(h, p.d - 1.0);
}
double AcvfBand::upper(const TemperedParams& p, double h) const {
  return c2 * std::exp(-p.lambda * h) * std::pow(h, p.d - 1.0);
}

AcvfBand calibrate_tfln2_band(const TemperedParams& p, double el2, double h_lo, double h_hi) {
  p.validate();
  require(p.d < 1.0, ErrorKind::parameter, "acvf band: requires d < 1");
  if (h_lo <= 0.0 && h_hi <= 0.0) {
    h_lo = std::max(1.0, 2.0 / p.lambda);
    h_hi = std::max(4.0, 10.0 / p.lambda);
  }
  require(h_lo >= 1.0 && h_hi > h_lo, ErrorKind::parameter, "acvf band: calibration range must satisfy 1 <= h_lo < h_hi");
  AcvfBand band;
  band.h_lo = h_lo;
  band.h_hi = h_hi;
  const double cinf = acvf_tfln2_limit_constant(p, el2);
  band.c1 = band.c2 = cinf;
  const int n = 24;
  for (int i = 0; i <= n; ++i) {
    const double h = h_lo * std::pow(h_hi / h_lo, static_cast<double>(i) / n);
    const double r = acvf_tfln2(p, h, el2) * std::exp(p.lambda * h) * std::pow(h, 1.0 - p.d);
    band.c1 = std::min(band.c1, r);
    band.c2 = std::max(band.c2, r);
  }
  return band;
}

std::pair<double, double> acvf_tfln2_asymptotic_band(const TemperedParams& p, double h, double el2) {
  const AcvfBand b = calibrate_tfln2_band(p, el2);
  return {b.lower(p, h), b.upper(p, h)};
}

double spec_density_tfln1(const TemperedParams& p, double omega) {
  p.validate();
  const double w2 = omega * omega;
  // 1 - cos w = 2 sin^2(w/2) avoids cancellation near 0
  const double s = std::sin(0.5 * omega);
  return (2.0 * s * s) / (2.0 * kPi * std::pow(p.lambda * p.lambda + w2, p.d + 1.0));
}

double spec_density_tfln2(const TemperedParams& p, double omega) {
  p.validate();
  const double base = std::pow(p.lambda * p.lambda + omega * omega, -p.d) / (2.0 * kPi);
  if (std::abs(omega) < 1e-4) return base * (0.5 - omega * omega / 24.0);
  const double s = std::sin(0.5 * omega);
  return base * 2.0 * s * s / (omega * omega);
}

std::vector<double> empirical_acvf(const std::vector<double>& x, long max_lag) {
  require(max_lag >= 0 && static_cast<long>(x.size()) > max_lag, ErrorKind::length,
          "empirical_acvf: need more samples than max_lag");
  const size_t n = x.size();
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> c(n);
  for (size_t i = 0; i < n; ++i) c[i] = x[i] - mean;
  std::vector<double> out(static_cast<size_t>(max_lag) + 1);
  for (long k = 0; k <= max_lag; ++k) {
    double s = 0.0;
    for (size_t t = 0; t + static_cast<size_t>(k) < n; ++t) s += c[t] * c[t + static_cast<size_t>(k)];
    out[static_cast<size_t>(k)] = s / static_cast<double>(n);
  }
  return out;
}

std::vector<SpectrumPoint> periodogram(const std::vector<double>& x, long segment_length) {
  const long L = segment_length;
  require(L >= 2 && (L & (L - 1)) == 0, ErrorKind::length, "periodogram: segment length must be a power of two");
  require(static_cast<long>(x.size()) >= L, ErrorKind::length, "periodogram: segment longer than the series");
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  std::vector<double> w(static_cast<size_t>(L));
  double w2 = 0.0;
  for (long i = 0; i < L; ++i) {
    w[static_cast<size_t>(i)] = 0.5 - 0.5 * std::cos(2.0 * kPi * i / L);
    w2 += w[static_cast<size_t>(i)] * w[static_cast<size_t>(i)];
  }
  std::vector<double> acc(static_cast<size_t>(L / 2 + 1), 0.0);
  std::vector<double> seg(static_cast<size_t>(L));
  long count = 0;
  for (long start = 0; start + L <= static_cast<long>(x.size()); start += L / 2) {
    for (long i = 0; i < L; ++i)
      seg[static_cast<size_t>(i)] = (x[static_cast<size_t>(start + i)] - mean) * w[static_cast<size_t>(i)];
    const auto pw = detail::power_spectrum(seg, static_cast<size_t>(L));
    for (size_t k = 0; k < acc.size(); ++k) acc[k] += pw[k];
    ++count;
  }
  std::vector<SpectrumPoint> out(acc.size());
  for (size_t k = 0; k < acc.size(); ++k)
    out[k] = {2.0 * kPi * static_cast<double>(k) / L, acc[k] / (count * 2.0 * kPi * w2)};
  return out;
}

SemiLrdFit fit_semi_lrd(const std::vector<std::pair<double, double>>& acvf) {
  std::vector<std::pair<double, double>> pts;
  int npos = 0, nneg = 0;
  for (const auto& [h, g] : acvf) {
    if (!(h > 0.0) || g == 0.0 || !std::isfinite(g)) continue;
    pts.emplace_back(h, g);
    (g > 0 ? npos : nneg)++;
  }
  std::set<double> distinct;
  for (const auto& pt : pts) distinct.insert(pt.first);
  require(distinct.size() >= 3, ErrorKind::length, "fit_semi_lrd: need at least 3 distinct lags with gamma != 0");
  const long n = static_cast<long>(pts.size());
  Eigen::MatrixXd X(n, 3);
  Eigen::VectorXd y(n);
  for (long i = 0; i < n; ++i) {
    const double h = pts[static_cast<size_t>(i)].first;
    X(i, 0) = 1.0;
    X(i, 1) = -h;
    X(i, 2) = std::log(h);
    y(i) = std::log(std::abs(pts[static_cast<size_t>(i)].second));
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  require(qr.rank() == 3, ErrorKind::length, "fit_semi_lrd: rank-deficient design");
  const Eigen::VectorXd b = qr.solve(y);
  SemiLrdFit fit;
  fit.sign = nneg == 0 ? 1 : (npos == 0 ? -1 : 0);
  fit.c_hat = (fit.sign < 0 ? -1.0 : 1.0) * std::exp(b(0));
  fit.lambda_hat = b(1);
  fit.delta_hat = b(2);
  fit.residual_rms = std::sqrt((X * b - y).squaredNorm() / n);
  fit.h_min = *distinct.begin();
  fit.h_max = *distinct.rbegin();
  fit.converged = std::isfinite(fit.lambda_hat) && std::isfinite(fit.delta_hat) && fit.lambda_hat > 0.0;
  return fit;
}

HolderEstimate holder_estimate(const std::vector<double>& values, double dx, double tau_min, double tau_max) {
  require(dx > 0.0 && tau_min > 0.0 && tau_max > tau_min, ErrorKind::parameter,
          "holder_estimate: requires 0 < tau_min < tau_max");
  const long n = static_cast<long>(values.size());
  const long mmin = std::max(1L, static_cast<long>(std::llround(tau_min / dx)));
  const long mmax = std::min(n - 2, static_cast<long>(std::llround(tau_max / dx)));
  require(mmax > mmin, ErrorKind::length, "holder_estimate: lag range empty on this grid");
  std::set<long> lags;
  const int npts = 16;
  for (int i = 0; i < npts; ++i)
    lags.insert(static_cast<long>(std::llround(mmin * std::pow(static_cast<double>(mmax) / mmin, i / (npts - 1.0)))));
  require(lags.size() >= 3, ErrorKind::length, "holder_estimate: fewer than 3 distinct lags");
  HolderEstimate est;
  for (long m : lags) {
    double ms = 0.0, sup = 0.0;
    for (long t = 0; t + m < n; ++t) {
      const double dlt = values[static_cast<size_t>(t + m)] - values[static_cast<size_t>(t)];
      ms += dlt * dlt;
      sup = std::max(sup, dlt * dlt);
    }
    ms /= static_cast<double>(n - m);
    est.taus.push_back(m * dx);
    est.mean_square.push_back(ms);
    est.sup_square.push_back(sup);
  }
  auto slope = [](const std::vector<double>& xs, const std::vector<double>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
      const double a = std::log(xs[i]), b = std::log(ys[i]);
      sx += a; sy += b; sxx += a * a; sxy += a * b;
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
  };
  est.zeta_mean_square = slope(est.taus, est.mean_square);
  est.zeta_sup = slope(est.taus, est.sup_square);
  est.holder = 0.5 * est.zeta_sup;
  return est;
}

double total_variation(const std::vector<double>& values) {
  double tv = 0.0;
  for (size_t i = 1; i < values.size(); ++i) tv += std::abs(values[i] - values[i - 1]);
  return tv;
}

}  // namespace tflp
