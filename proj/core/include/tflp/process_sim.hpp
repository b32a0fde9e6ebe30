#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tflp/levy_driver.hpp"

namespace tflp {

struct TemperedParams {
  double d = 0.0;
  double lambda = 1.0;
  void validate() const;  // d > -1/2, lambda > 0
};

enum class PathKind { TFLP1, TFLP2, TFLN1, TFLN2 };
const char* to_string(PathKind k);

struct SimOptions {
  int refine = 8;             // integration cells per observation step
  double tolerance = 1e-6;    // bound on e^{-lambda R} R^{max(d,0)} for the truncation width R
  long max_cells = 1L << 26;  // budget for drawn driver cells
};

struct PathMeta {
  TemperedParams params;
  LevyDriverSpec driver;
  std::uint64_t seed = 0;
  PathKind kind = PathKind::TFLP1;
  double trunc_width = 0.0;
  int refine = 0;
  std::string method;  // "moving-average" or "smooth"
};

struct SamplePath {
  SampleGrid grid;
  std::vector<double> values;
  PathMeta meta;
};

// g^I_t(x) = e^{-lambda(t-x)_+}(t-x)_+^d - e^{-lambda(-x)_+}(-x)_+^d with 0^0 = 0.
double kernel_g1(const TemperedParams& p, double t, double x);
// g^II_t(y) = g^I_t(y) + lambda int_0^t (s-y)_+^d e^{-lambda(s-y)_+} ds, closed form.
double kernel_g2(const TemperedParams& p, double t, double y);
// d int_0^t (s-y)_+^{d-1} e^{-lambda(s-y)_+} ds by adaptive quadrature; d > 0.
double kernel_g2_derivative_form(const TemperedParams& p, double t, double y, double tol = 1e-12);

// Moving-average simulator with its kernel table precomputed, reusable across seeds.
// S(t) = 1/Gamma(1+d) sum_k g_t(x_k) dL_k with cell-averaged kernels on a grid of
// step obs.dx()/refine; each observation time uses the lags within the truncation width.
class PathSimulator {
 public:
  PathSimulator(PathKind kind, const TemperedParams& p, const SampleGrid& obs, const LevyDriverSpec& driver,
                double trunc_width, const SimOptions& opt = {}, bool smooth = false);
  ~PathSimulator();
  PathSimulator(PathSimulator&&) noexcept;

  SamplePath run(std::uint64_t seed) const;
  double trunc_width() const;
  double step() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

SamplePath simulate_tflp1(const TemperedParams& p, const SampleGrid& obs, const LevyDriverSpec& driver,
                          double trunc_width, std::uint64_t seed, const SimOptions& opt = {});
SamplePath simulate_tflp2(const TemperedParams& p, const SampleGrid& obs, const LevyDriverSpec& driver,
                          double trunc_width, std::uint64_t seed, const SimOptions& opt = {});
// d > 1/2: S(t) = 1/Gamma(1+d) int_0^t Z(s) ds with Z(s) = int phi'(s-x) dL(x).
SamplePath simulate_smooth_regime(const TemperedParams& p, const SampleGrid& obs, const LevyDriverSpec& driver,
                                  double trunc_width, std::uint64_t seed, PathKind kind,
                                  const SimOptions& opt = {});

// X(t) = S(t + unit_lag) - S(t).
SamplePath noise_path(const SamplePath& path, double unit_lag = 1.0);

// Paths for seeds first_seed .. first_seed + count - 1, in seed order.
std::vector<SamplePath> simulate_ensemble(PathKind kind, const TemperedParams& p, const SampleGrid& obs,
                                          const LevyDriverSpec& driver, double trunc_width,
                                          std::uint64_t first_seed, std::size_t count,
                                          const SimOptions& opt = {});

}  // namespace tflp
