#pragma once

#include <vector>

namespace tflp::detail {

enum class KernelKind { first, second };

// phi_I(u) = u_+^d e^{-lambda u};  phi_II(u) = phi_I(u) + lambda^{-d} lowergamma(d+1, lambda u_+).
// rho = phi_II - lambda^{-d} Gamma(d+1) 1(u > 0) is the decaying part of phi_II.
struct Kernel {
  KernelKind kind;
  double d;
  double lambda;

  double phi(double u) const;
  double rho(double u) const;
  // phi for the first kind, rho for the second; decays like e^{-lambda u}
  double decaying(double u) const { return kind == KernelKind::first ? phi(u) : rho(u); }
  // coefficient of 1(u > 0) removed from phi to obtain decaying()
  double step() const;

  // int_a^b phi(u) du and int_a^b decaying(u) du for a < b (negative parts contribute 0)
  double phi_integral(double a, double b) const;
  double decaying_integral(double a, double b) const;
};

// Cell averages (1/h) int_{mh}^{(m+1)h} decaying(u) du, m = 0..count-1.
std::vector<double> decaying_cell_averages(const Kernel& k, double h, long count);

// R beyond which e^{-lambda R} max(R, 1)^{max(d, 0)} < tol.
double truncation_width(double d, double lambda, double tol);

}  // namespace tflp::detail
