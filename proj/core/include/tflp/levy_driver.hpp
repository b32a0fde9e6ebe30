#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace tflp {

struct UniformSymmetric {
  double a = 1.0;  // jumps uniform on [-a, a]
};
struct GaussianJumps {
  double sigma = 1.0;
};
struct TwoPoint {
  double c = 1.0;  // jumps +-c with probability 1/2 each
};
using JumpLaw = std::variant<UniformSymmetric, GaussianJumps, TwoPoint>;

struct CompoundPoisson {
  double intensity = 1.0;  // events per unit time
  JumpLaw jumps = UniformSymmetric{};
};

// Levy density scale * exp(-lambda_noise |x|) |x|^{-1-alpha} on x > 0, and on
// x < 0 as well when symmetric. Compensated to mean zero.
struct TemperedStable {
  double alpha = 1.5;
  double lambda_noise = 1.0;
  double scale = 1.0;
  bool symmetric = true;
};

// Brownian motion sigma * B(t); violates the no-Gaussian-part requirement and is
// only meant for cross-checks against Gaussian formulas.
struct GaussianValidation {
  double sigma = 1.0;
};

struct LevyDriverSpec {
  std::variant<CompoundPoisson, TemperedStable, GaussianValidation> kind = CompoundPoisson{};

  bool outside_condition_L() const { return std::holds_alternative<GaussianValidation>(kind); }
  void validate() const;

  std::map<std::string, std::string> to_config() const;
  static LevyDriverSpec from_config(const std::map<std::string, std::string>& cfg);
};

struct SampleGrid {
  double x_min = 0.0;
  double x_max = 1.0;
  long n_cells = 1;

  double dx() const { return (x_max - x_min) / static_cast<double>(n_cells); }
  double x(long k) const { return x_min + static_cast<double>(k) * dx(); }
  long n_points() const { return n_cells + 1; }
  void validate() const;
};

// E[L(1)^2].
double second_moment(const LevyDriverSpec& spec);

// psi(theta) with E exp(i theta L(1)) = exp(psi(theta)).
std::complex<double> char_exponent(const LevyDriverSpec& spec, double theta);

// Draws i.i.d. increments of L over cells of width h. Cell k of the lattice h*Z
// is a pure function of (seed, k), so overlapping windows see identical noise.
class IncrementSampler {
 public:
  IncrementSampler(const LevyDriverSpec& spec, double h);

  double operator()(std::uint64_t seed, std::int64_t cell) const;
  void fill(std::uint64_t seed, std::int64_t first_cell, std::vector<double>& out) const;

  double cell_width() const { return h_; }
  // True when the tempered-stable sampler runs in compound-Poisson-plus-Gaussian mode.
  bool uses_fallback() const { return fallback_; }

 private:
  LevyDriverSpec spec_;
  double h_;
  bool fallback_ = false;
  // tempered stable, exact mode
  double ts_sigma_ = 0, ts_shift_ = 0, ts_center_ = 0, ts_B_ = 0, ts_S_ = 0;
  // tempered stable, fallback mode
  double fb_eps_ = 0, fb_rate_ = 0, fb_small_sd_ = 0;
};

// Increments on grid cells. When x_min lies on the lattice dx*Z the cells are
// keyed by their absolute lattice index, otherwise by their position 0..n-1.
std::vector<double> sample_increments(const LevyDriverSpec& spec, const SampleGrid& grid,
                                      std::uint64_t seed);

// True (with k set) when x lies within 1e-9*h of the lattice point k*h.
bool lattice_index(double x, double h, std::int64_t& k);

}  // namespace tflp
