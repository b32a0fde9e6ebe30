#pragma once

#include <functional>
#include <vector>

#include "tflp/levy_driver.hpp"

namespace tflp {

struct GridFunction {
  SampleGrid grid;
  std::vector<double> values;  // one per grid point, n_cells + 1

  void validate() const;
  double x(long k) const { return grid.x(k); }
  static GridFunction sample(const SampleGrid& grid, const std::function<double(double)>& f);
};

enum class Side { minus, plus };

struct CalculusOptions {
  // Maximum |f_n - f_{n-1}| / max|f| at the end the operator integrates toward.
  // Beyond the grid f is continued by its boundary value, so that end must be flat.
  double flat_tolerance = 1e-6;
};

// I^{kappa,lambda}_- f(y) = 1/Gamma(kappa) int_y^inf f(s) (s-y)^{kappa-1} e^{-lambda(s-y)} ds.
// Product integration against the piecewise linear interpolant of f.
GridFunction frac_integral_minus(const GridFunction& f, double kappa, double lambda,
                                 const CalculusOptions& opt = {});
GridFunction frac_integral_plus(const GridFunction& f, double kappa, double lambda,
                                const CalculusOptions& opt = {});

// Marchaud-form tempered derivative, 0 < kappa < 1:
// D_- f(y) = lambda^kappa f(y) + kappa/Gamma(1-kappa) int_0^inf (f(y) - f(y+u)) u^{-kappa-1} e^{-lambda u} du.
GridFunction frac_derivative_minus(const GridFunction& f, double kappa, double lambda,
                                   const CalculusOptions& opt = {});
GridFunction frac_derivative_plus(const GridFunction& f, double kappa, double lambda,
                                  const CalculusOptions& opt = {});

// Inverse FFT of fhat(w) (lambda - i w)^kappa (Side::minus) or (lambda + i w)^kappa
// (Side::plus), principal branch, zero padding to twice the length.
GridFunction fourier_multiplier(const GridFunction& f, double kappa, double lambda, Side sign);

// ||f||_{kappa,lambda} = ( 1/(2 pi) int (lambda^2 + w^2)^kappa |fhat(w)|^2 dw )^{1/2}.
double sobolev_norm(const GridFunction& f, double kappa, double lambda);

// Trapezoidal L2 norm and inner product on a shared grid.
double l2_norm(const GridFunction& f);
double l2_inner(const GridFunction& f, const GridFunction& g);

// g(x) = f(-x) on the reflected grid [-x_max, -x_min].
GridFunction reflect(const GridFunction& f);

}  // namespace tflp
