#include <cmath>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include "tflp/errors.hpp"
#include "tflp/tempered_calculus.hpp"

using namespace tflp;

namespace {

double gauss(double x) { return std::exp(-x * x); }

GridFunction gauss_grid(double dx, double half = 8.0) {
  return GridFunction::sample(SampleGrid{-half, half, std::lround(2 * half / dx)}, gauss);
}

// 1/Gamma(k) int_0^inf f(y + s u) u^{k-1} e^{-l u} du, s = +1 for the minus side
double quad_integral(double y, double kappa, double lambda, double s) {
  auto g = [&](double u) { return gauss(y + s * u) * std::pow(u, kappa - 1.0) * std::exp(-lambda * u); };
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  return (ts.integrate(g, 0.0, 1.0, 1e-13) + es.integrate([&](double u) { return g(1.0 + u); }, 1e-13)) /
         std::tgamma(kappa);
}

double max_diff(const GridFunction& a, const GridFunction& b) {
  double e = 0;
  for (size_t i = 0; i < a.values.size(); ++i) e = std::max(e, std::abs(a.values[i] - b.values[i]));
  return e;
}

}  // namespace

TEST(Calculus, IntegralMatchesQuadrature) {
  const double dx = 1.0 / 256;
  const auto f = gauss_grid(dx);
  for (double kappa : {0.3, 0.8, 1.5})
    for (double lambda : {0.5, 2.0}) {
      const auto m = frac_integral_minus(f, kappa, lambda);
      const auto p = frac_integral_plus(f, kappa, lambda);
      for (long k = 512; k <= 3584; k += 384) {
        const double y = f.x(k);
        EXPECT_NEAR(m.values[k], quad_integral(y, kappa, lambda, 1.0), 2e-5) << kappa << " " << lambda << " " << y;
        EXPECT_NEAR(p.values[k], quad_integral(y, kappa, lambda, -1.0), 2e-5);
      }
    }
}

TEST(Calculus, PlusSideIsReflectedMinusSide) {
  const auto f = GridFunction::sample(SampleGrid{-6.0, 6.0, 1536}, [](double x) { return gauss(x - 0.7); });
  const auto a = frac_integral_plus(f, 0.4, 1.0);
  const auto b = reflect(frac_integral_minus(reflect(f), 0.4, 1.0));
  EXPECT_LT(max_diff(a, b), 1e-13);
}

TEST(Calculus, DerivativeInvertsIntegral) {
  for (double kappa : {0.2, 0.5, 0.8}) {
    const double dx = 1.0 / 512;
    const auto f = gauss_grid(dx);
    const double tol = std::pow(dx, 2 - kappa);
    EXPECT_LT(max_diff(frac_derivative_minus(frac_integral_minus(f, kappa, 1.0), kappa, 1.0), f), tol);
    EXPECT_LT(max_diff(frac_derivative_plus(frac_integral_plus(f, kappa, 1.0), kappa, 1.0), f), tol);
  }
}

TEST(Calculus, MultiplierAgreesWithMarchaud) {
  const auto f = gauss_grid(1.0 / 256);
  for (double kappa : {0.2, 0.5, 0.8})
    for (Side s : {Side::minus, Side::plus}) {
      auto m = fourier_multiplier(f, kappa, 1.5, s);
      const auto d = s == Side::minus ? frac_derivative_minus(f, kappa, 1.5) : frac_derivative_plus(f, kappa, 1.5);
      for (size_t i = 0; i < m.values.size(); ++i) m.values[i] -= d.values[i];
      EXPECT_LT(l2_norm(m) / l2_norm(d), 1e-3);
    }
}

TEST(Calculus, MultiplierOfIntegralOrderIsInverse) {
  // (lambda - i w)^kappa undoes I^kappa_- up to grid error
  const auto f = gauss_grid(1.0 / 256);
  const auto g = fourier_multiplier(frac_integral_minus(f, 0.6, 1.0), 0.6, 1.0, Side::minus);
  EXPECT_LT(max_diff(g, f), 3e-3);
}

TEST(Calculus, SemigroupProperty) {
  const double dx = 1.0 / 256;
  const auto f = gauss_grid(dx);
  const auto ab = frac_integral_minus(frac_integral_minus(f, 0.3, 1.0), 0.4, 1.0);
  EXPECT_LT(max_diff(ab, frac_integral_minus(f, 0.7, 1.0)), 4 * dx * dx);
}

TEST(Calculus, SobolevNormMatchesFourierQuadrature) {
  // fhat(w) = sqrt(pi) e^{-w^2/4}
  const auto f = gauss_grid(1.0 / 128, 10.0);
  boost::math::quadrature::exp_sinh<double> es;
  for (double kappa : {0.0, 0.3, 1.0})
    for (double lambda : {0.5, 2.0}) {
      const double ref = std::sqrt(
          es.integrate([&](double w) { return std::pow(lambda * lambda + w * w, kappa) * M_PI * std::exp(-w * w / 2); },
                       1e-14) /
          M_PI);
      EXPECT_NEAR(sobolev_norm(f, kappa, lambda) / ref, 1.0, 1e-6);
    }
}

TEST(Calculus, SobolevNormOfIntegralIsL2Norm) {
  const auto f = gauss_grid(1.0 / 256, 12.0);
  for (double kappa : {0.25, 0.5})
    EXPECT_NEAR(sobolev_norm(frac_integral_minus(f, kappa, 1.0), kappa, 1.0) / l2_norm(f), 1.0, 1e-3);
}

TEST(Calculus, SobolevEquivalenceBounds) {
  // lambda^kappa |f|_2 <= |f|_{kappa,lambda} and the norm grows with kappa when lambda >= 1
  const auto f = gauss_grid(1.0 / 128);
  for (double lambda : {1.0, 3.0}) {
    double prev = 0;
    for (double kappa : {0.0, 0.25, 0.5, 1.0}) {
      const double n = sobolev_norm(f, kappa, lambda);
      EXPECT_GE(n, std::pow(lambda, kappa) * l2_norm(f) * (1 - 1e-9));
      EXPECT_GE(n, prev);
      prev = n;
    }
  }
}

TEST(Calculus, SobolevNormsEquivalentAcrossLambda) {
  // min(1, lambda)^kappa |f|_{kappa,1} <= |f|_{kappa,lambda} <= max(1, lambda)^kappa |f|_{kappa,1}
  const auto f = GridFunction::sample(SampleGrid{-8.0, 8.0, 2048}, [](double x) { return x * std::exp(-x * x); });
  for (double kappa : {0.3, 0.7})
    for (double lambda : {0.5, 1.0, 3.0}) {
      const double r = sobolev_norm(f, kappa, lambda) / sobolev_norm(f, kappa, 1.0);
      EXPECT_GE(r, std::pow(std::min(1.0, lambda), kappa) * (1 - 1e-12));
      EXPECT_LE(r, std::pow(std::max(1.0, lambda), kappa) * (1 + 1e-12));
      if (lambda < 1.0) EXPECT_LT(r, 1.0);
    }
}

TEST(Calculus, NarrowGridIsReported) {
  const auto f = GridFunction::sample(SampleGrid{-1.0, 1.0, 256}, gauss);
  try {
    frac_integral_minus(f, 0.5, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::tolerance);
  }
}

TEST(Calculus, DomainErrors) {
  const auto f = gauss_grid(1.0 / 64);
  EXPECT_THROW(frac_integral_minus(f, 0.0, 1.0), Error);
  EXPECT_THROW(frac_integral_minus(f, 0.5, 0.0), Error);
  try {
    frac_derivative_minus(f, 1.2, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::domain);
  }
  GridFunction bad{SampleGrid{0, 1, 4}, {1, 2, 3}};
  EXPECT_THROW(bad.validate(), Error);
}
