#pragma once

namespace tflp {

// Gamma function. Throws ErrorKind::domain at poles, ErrorKind::overflow when
// the result is not representable.
double gamma_fn(double x);

// Modified Bessel function of the second kind K_nu(z), z > 0.
double bessel_k(double nu, double z);

// e^z K_nu(z); stays representable for large z where K_nu underflows.
double bessel_k_scaled(double nu, double z);

// Non-regularized incomplete gamma functions.
// lower_gamma requires s > 0; upper_gamma accepts any real s when x > 0.
double lower_gamma(double s, double x);
double upper_gamma(double s, double x);

}  // namespace tflp
