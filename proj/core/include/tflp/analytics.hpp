#pragma once

#include <utility>
#include <vector>

#include "tflp/process_sim.hpp"

namespace tflp {

// 2Gamma(1+2d)/(2 lambda|t|)^{1+2d} - 2Gamma(1+d)/sqrt(pi) (2 lambda |t|)^{-1/2-d} K_{1/2+d}(lambda|t|); 0 at t = 0.
double ct_squared(const TemperedParams& p, double t);

// Var S(tau) / E[L(1)^2] for the two kinds; stationary increments make this the
// variogram of the process.
double var_increment_tflp1(const TemperedParams& p, double tau);
double var_increment_tflp2(const TemperedParams& p, double tau);

double cov_tflp1(const TemperedParams& p, double s, double t, double el2);
double var_limit_tflp1(const TemperedParams& p, double el2);
// Closed form through a Bessel-kernel integral, d > 0.
double cov_tflp2(const TemperedParams& p, double s, double t, double el2);

// gamma^I(h) = Cov(X^I(t), X^I(t+h)).
double acvf_tfln1(const TemperedParams& p, double h, double el2);
// C e^{-lambda h} h^d with C = -el2 lambda^2 / (Gamma(d+1) (2 lambda)^{d+1}).
double acvf_tfln1_asymptotic(const TemperedParams& p, double h, double el2 = 1.0);

// gamma^II(h). For h >= 1 the Fourier inversion of the spectral density is
// deformed onto the branch cut [lambda, inf); below lag 1 it uses the variogram.
double acvf_tfln2(const TemperedParams& p, double h, double el2);
// Limit of gamma^II(h) e^{lambda h} h^{1-d}.
double acvf_tfln2_limit_constant(const TemperedParams& p, double el2);

struct AcvfBand {
  double c1 = 0.0, c2 = 0.0;        // gamma^II(h) e^{lambda h} h^{1-d} in [c1, c2]
  double h_lo = 0.0, h_hi = 0.0;    // calibration range
  double lower(const TemperedParams& p, double h) const;
  double upper(const TemperedParams& p, double h) const;
};
// Constants from exact values on [h_lo, h_hi] together with the limit constant.
// h_lo = h_hi = 0 selects [max(1, 2/lambda), max(4, 10/lambda)].
AcvfBand calibrate_tfln2_band(const TemperedParams& p, double el2, double h_lo = 0.0, double h_hi = 0.0);
std::pair<double, double> acvf_tfln2_asymptotic_band(const TemperedParams& p, double h, double el2 = 1.0);

// Densities as displayed, normalized to E[L(1)^2] = 1. With these displays
// gamma(h) / el2 = 2 int e^{i w h} density(w) dw.
double spec_density_tfln1(const TemperedParams& p, double omega);
double spec_density_tfln2(const TemperedParams& p, double omega);

// Biased (1/N) sample autocovariance at lags 0..max_lag, mean removed.
std::vector<double> empirical_acvf(const std::vector<double>& x, long max_lag);

struct SpectrumPoint {
  double omega;
  double power;
};
// Welch estimate, Hann window, 50% overlap, unit sampling interval.
// Normalized so i.i.d. noise of variance s^2 gives s^2/(2 pi).
std::vector<SpectrumPoint> periodogram(const std::vector<double>& x, long segment_length);

struct SemiLrdFit {
  double lambda_hat = 0.0;
  double delta_hat = 0.0;
  double c_hat = 0.0;  // signed amplitude
  double h_min = 0.0, h_max = 0.0;
  double residual_rms = 0.0;
  int sign = 1;        // +1 all positive, -1 all negative, 0 mixed
  bool converged = false;
};
// Least squares of log|gamma(h)| = log|c| - lambda h + delta log h.
SemiLrdFit fit_semi_lrd(const std::vector<std::pair<double, double>>& acvf);

struct HolderEstimate {
  double zeta_mean_square = 0.0;  // slope of log mean |S(t+tau)-S(t)|^2
  double zeta_sup = 0.0;          // slope of log max_t |S(t+tau)-S(t)|^2
  double holder = 0.0;            // zeta_sup / 2
  std::vector<double> taus, mean_square, sup_square;
};
// Structure functions at log-spaced lags in [tau_min, tau_max] on a uniform grid of step dx.
HolderEstimate holder_estimate(const std::vector<double>& values, double dx, double tau_min, double tau_max);

double total_variation(const std::vector<double>& values);

}  // namespace tflp
