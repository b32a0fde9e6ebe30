#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tflp/levy_driver.hpp"
#include "tflp/process_sim.hpp"
#include "tflp/tempered_calculus.hpp"

namespace tflp {

// f = sum_i a_i 1_{[t_i, t_{i+1})}.
struct ElementaryFunction {
  std::vector<double> breakpoints;
  std::vector<double> coefficients;

  void validate() const;
  double operator()(double x) const;
  // 1_{[0,t]}; for t < 0 this is -1_{[t,0]}.
  static ElementaryFunction indicator(double t);
};

enum class Target { TFLP1, TFLP2 };
// A1: TFLP II, d > 0, F = I^d f.  A2: TFLP II, d < 0, F = D^{-d} f.
// A3: TFLP, d < 0, F = D^{-d} f - lambda I^{d+1} f.  A4: TFLP, 0 < d < 1/2, F = I^d f - lambda I^{d+1} f.
enum class Regime { A1, A2, A3, A4 };
const char* to_string(Regime r);
const char* to_string(Target t);
Regime regime_for(const TemperedParams& p, Target target);

struct TransformOptions {
  double dx = 1.0 / 256.0;    // grid step used for elementary integrands
  double tolerance = 1e-6;    // tail bound setting the left extension of the support
  CalculusOptions calculus;
};

struct IntegrandTransform {
  Regime regime = Regime::A1;
  Target target = Target::TFLP2;
  TemperedParams params;
  GridFunction transformed;
  double norm = 0.0;
  // Set when the integrand was elementary; inner products between two such transforms are exact.
  std::optional<ElementaryFunction> source;
};

// Grid integrands are the linear interpolant of the samples and zero outside the
// grid; the support is extended to the left by the truncation width.
IntegrandTransform transform_integrand(const GridFunction& f, const TemperedParams& p, Target target,
                                       const TransformOptions& opt = {});
// Elementary integrands use the closed form [phi(b - y) - phi(a - y)] / Gamma(d+1) per piece.
IntegrandTransform transform_integrand(const ElementaryFunction& f, const TemperedParams& p, Target target,
                                       const TransformOptions& opt = {});

double inner_product(const IntegrandTransform& f, const IntegrandTransform& g);

// sum_i a_i [S(t_{i+1}) - S(t_i)]; breakpoints must lie on the path grid.
double integrate_elementary(const ElementaryFunction& f, const SamplePath& path);

// Integral of a transformed integrand against driver increments on the cells of its grid.
// Cells keyed by absolute lattice index share noise with the path simulator for equal seeds.
class IntegralSampler {
 public:
  IntegralSampler(const IntegrandTransform& t, const LevyDriverSpec& driver);

  double operator()(std::uint64_t seed) const;
  double predicted_variance() const { return predicted_; }
  std::int64_t first_cell() const { return first_cell_; }
  const std::vector<double>& weights() const { return w_; }
  double cell_width() const { return sampler_.cell_width(); }

 private:
  IncrementSampler sampler_;
  std::int64_t first_cell_ = 0;
  std::vector<double> w_;  // per-cell integrand weight
  double predicted_ = 0.0;
};

double integrate_general(const GridFunction& f, const TemperedParams& p, const LevyDriverSpec& driver,
                         std::uint64_t seed, Target target, const TransformOptions& opt = {});
double integrate_general(const ElementaryFunction& f, const TemperedParams& p, const LevyDriverSpec& driver,
                         std::uint64_t seed, Target target, const TransformOptions& opt = {});

struct IsometryResult {
  double mean = 0.0, mean_se = 0.0;
  double variance = 0.0, variance_se = 0.0;
  double predicted = 0.0;  // EL2 * norm^2
  double ratio = 0.0;      // variance / predicted
  bool pass = false;       // |ratio - 1| <= 3 variance_se / predicted and |mean| <= 3 mean_se
};
// Draws seeds first_seed .. first_seed + n_draws - 1; all integrands see the same driver noise.
std::vector<IsometryResult> isometry_monte_carlo(const std::vector<IntegrandTransform>& transforms,
                                                 const LevyDriverSpec& driver, long n_draws,
                                                 std::uint64_t first_seed);

struct ElementaryApproximation {
  ElementaryFunction f;
  double distance = 0.0;          // transform-space distance to the target integrand
  int level = 0;                  // 2^level pieces
  std::vector<double> history;    // distance at each level tried
};
// Dyadic partitions of the grid with cell-average coefficients, refined until the
// distance drops below tol.
ElementaryApproximation approximate_by_elementary(const GridFunction& f, const TemperedParams& p, Target target,
                                                  double tol, int max_level = 12,
                                                  const TransformOptions& opt = {});
ElementaryApproximation approximate_by_elementary(const ElementaryFunction& f, const TemperedParams& p,
                                                  Target target, double tol);

}  // namespace tflp
