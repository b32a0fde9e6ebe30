#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include "tflp/errors.hpp"
#include "tflp/levy_driver.hpp"

using namespace tflp;

namespace {

LevyDriverSpec cpois(JumpLaw j, double rate = 1.0) {
  LevyDriverSpec s;
  s.kind = CompoundPoisson{rate, j};
  return s;
}

LevyDriverSpec tstable(double alpha, bool symmetric = true) {
  LevyDriverSpec s;
  s.kind = TemperedStable{alpha, 1.5, 0.7, symmetric};
  return s;
}

struct Moments {
  double mean, var, n;
};

Moments moments(const IncrementSampler& smp, std::uint64_t seed, long n) {
  std::vector<double> v(static_cast<size_t>(n));
  smp.fill(seed, 0, v);
  double m = 0;
  for (double x : v) m += x;
  m /= n;
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return {m, s / (n - 1), static_cast<double>(n)};
}

}  // namespace

TEST(Driver, SecondMomentClosedForms) {
  EXPECT_DOUBLE_EQ(second_moment(cpois(UniformSymmetric{2.0}, 3.0)), 4.0);
  EXPECT_DOUBLE_EQ(second_moment(cpois(TwoPoint{0.5}, 2.0)), 0.5);
  EXPECT_DOUBLE_EQ(second_moment(cpois(GaussianJumps{3.0})), 9.0);
  LevyDriverSpec g;
  g.kind = GaussianValidation{2.0};
  EXPECT_DOUBLE_EQ(second_moment(g), 4.0);
  EXPECT_TRUE(g.outside_condition_L());
}

TEST(Driver, SecondMomentIsMinusCurvatureOfExponent) {
  for (const auto& s : {cpois(UniformSymmetric{1.3}, 0.7), cpois(GaussianJumps{0.4}), tstable(0.6), tstable(1.5),
                        tstable(1.2, false)}) {
    const double e = 1e-3;
    const double curv = (char_exponent(s, e).real() - 2 * char_exponent(s, 0).real() + char_exponent(s, -e).real()) /
                        (e * e);
    EXPECT_NEAR(-curv / second_moment(s), 1.0, 1e-5);
  }
}

TEST(Driver, TemperedStableExponentMatchesClosedForm) {
  // one-sided: scale Gamma(-a) [(l - i th)^a - l^a + i th a l^{a-1}]
  for (double alpha : {0.5, 1.5, 1.8}) {
    const auto s = tstable(alpha, false);
    const auto& ts = std::get<TemperedStable>(s.kind);
    for (double th : {0.3, 1.0, 4.0}) {
      const std::complex<double> l(ts.lambda_noise, 0.0), it(0.0, th);
      const auto ref = ts.scale * std::tgamma(-alpha) *
                       (std::pow(l - it, alpha) - std::pow(l, alpha) + it * alpha * std::pow(l, alpha - 1.0));
      EXPECT_NEAR(std::abs(char_exponent(s, th) - ref), 0.0, 1e-10 * std::abs(ref));
    }
  }
}

TEST(Driver, SamplerIsPureFunctionOfSeedAndCell) {
  const IncrementSampler a(tstable(1.5), 0.01), b(tstable(1.5), 0.01);
  for (std::int64_t k : {-5, 0, 17}) EXPECT_EQ(a(3, k), b(3, k));
  EXPECT_NE(a(3, 1), a(4, 1));
  std::vector<double> w1(30), w2(10);
  a.fill(9, -10, w1);
  a.fill(9, 0, w2);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(w1[10 + i], w2[i]);
}

TEST(Driver, OverlappingGridsShareNoise) {
  const auto s = cpois(UniformSymmetric{1.0});
  const auto x = sample_increments(s, SampleGrid{-1.0, 1.0, 200}, 5);
  const auto y = sample_increments(s, SampleGrid{0.0, 2.0, 200}, 5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(x[100 + i], y[i]);
}

TEST(Driver, IncrementVarianceMatchesSecondMoment) {
  const double h = 0.05;
  const long n = 200000;
  for (const auto& s : {cpois(UniformSymmetric{1.0}), cpois(TwoPoint{1.0}, 4.0), tstable(0.7), tstable(1.5),
                        tstable(1.95), tstable(1.3, false)}) {
    const auto m = moments(IncrementSampler(s, h), 11, n);
    const double v = h * second_moment(s);
    EXPECT_NEAR(m.mean, 0.0, 5 * std::sqrt(v / n));
    // variance standard error needs the fourth moment; a generous 6% covers heavy-ish tails at this n
    EXPECT_NEAR(m.var / v, 1.0, 0.06);
  }
}

TEST(Driver, EmpiricalCharacteristicFunction) {
  const double h = 0.1;
  const long n = 200000;
  for (const auto& s : {cpois(UniformSymmetric{1.0}, 2.0), tstable(0.8), tstable(1.5, false)}) {
    const IncrementSampler smp(s, h);
    std::vector<double> v(n);
    smp.fill(21, 0, v);
    for (double th : {0.5, 2.0}) {
      std::complex<double> acc = 0;
      for (double x : v) acc += std::exp(std::complex<double>(0, th * x));
      acc /= static_cast<double>(n);
      const auto ref = std::exp(h * char_exponent(s, th));
      EXPECT_LT(std::abs(acc - ref), 5.0 / std::sqrt(static_cast<double>(n))) << "theta=" << th;
    }
  }
}

TEST(Driver, ConfigRoundTrip) {
  for (const auto& s : {cpois(GaussianJumps{0.3}, 2.5), cpois(TwoPoint{2.0}), tstable(1.1, false)}) {
    const auto back = LevyDriverSpec::from_config(s.to_config());
    EXPECT_EQ(back.to_config(), s.to_config());
    EXPECT_DOUBLE_EQ(second_moment(back), second_moment(s));
  }
}

TEST(Driver, ValidationRejectsBadParameters) {
  EXPECT_THROW(cpois(UniformSymmetric{-1.0}).validate(), Error);
  EXPECT_THROW(tstable(2.0).validate(), Error);
  EXPECT_THROW(LevyDriverSpec::from_config({{"driver", "nope"}}), Error);
  EXPECT_THROW(IncrementSampler(cpois(UniformSymmetric{}), 0.0), Error);
  EXPECT_NO_THROW(cpois(UniformSymmetric{}, 0.0).validate());
}
