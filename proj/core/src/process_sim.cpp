#include "tflp/process_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fft.hpp"
#include "kernels.hpp"
#include "tflp/errors.hpp"
#include "tflp/parallel.hpp"

namespace tflp {

void TemperedParams::validate() const {
  require(std::isfinite(d) && d > -0.5, ErrorKind::parameter, "TemperedParams: d must be > -1/2");
  require(std::isfinite(lambda) && lambda > 0.0, ErrorKind::parameter,
          "TemperedParams: lambda must be > 0 (the untempered case is not supported)");
}

const char* to_string(PathKind k) {
  switch (k) {
    case PathKind::TFLP1: return "tflp1";
    case PathKind::TFLP2: return "tflp2";
    case PathKind::TFLN1: return "tfln1";
    case PathKind::TFLN2: return "tfln2";
  }
  return "?";
}

double kernel_g1(const TemperedParams& p, double t, double x) {
  const detail::Kernel k{detail::KernelKind::first, p.d, p.lambda};
  return k.phi(t - x) - k.phi(-x);
}

double kernel_g2(const TemperedParams& p, double t, double y) {
  const detail::Kernel k{detail::KernelKind::second, p.d, p.lambda};
  if (t - y > 0.0 && -y > 0.0) return k.rho(t - y) - k.rho(-y);  // constant parts cancel
  return k.phi(t - y) - k.phi(-y);
}

double kernel_g2_derivative_form(const TemperedParams& p, double t, double y, double tol) {
  p.validate();
  require(p.d > 0.0, ErrorKind::parameter, "kernel_g2_derivative_form: requires d > 0");
  const double sign = t >= 0.0 ? 1.0 : -1.0;
  const double lo = std::max(std::min(0.0, t), y), hi = std::max(0.0, t);
  if (hi <= lo) return 0.0;
  // v = s - y ranges over [lo - y, hi - y]; integrand singular at v = 0 when d < 1
  boost::math::quadrature::tanh_sinh<double> ts;
  double err = 0.0;
  const double val = ts.integrate(
      [&](double v) { return std::pow(v, p.d - 1.0) * std::exp(-p.lambda * v); }, lo - y, hi - y, tol, &err);
  if (!(err <= 1e3 * tol * std::max(1.0, std::abs(val))))
    fail(ErrorKind::tolerance, "kernel_g2_derivative_form: quadrature tolerance not met");
  return sign * p.d * val;
}

struct PathSimulator::Impl {
  PathKind kind;          // requested kind
  bool second = false;    // TFLP II kernel
  bool noise = false;     // return unit-lag increments
  bool smooth = false;
  TemperedParams params;
  LevyDriverSpec driver;
  SampleGrid out_grid;    // grid of the returned path
  SampleGrid s_grid;      // grid on which S is evaluated
  long q = 0;             // noise lag in observation steps
  IncrementSampler sampler;
  double h = 0.0;
  long W = 0;
  std::int64_t k0 = 0, k1 = 0;
  std::vector<std::int64_t> J;  // lattice index of each S-grid point
  std::vector<double> table;    // cell-averaged decaying kernel, or phi' averages when smooth
  double lam_pow = 0.0;         // lambda^{-d}, weight of L(t) - L(0) for the second kind
  double inv_gamma = 0.0;       // 1 / Gamma(1 + d)
  bool use_fft = false;
  std::string method;

  Impl(PathKind k, const TemperedParams& p, const SampleGrid& obs, const LevyDriverSpec& drv, double trunc,
       const SimOptions& opt, bool sm)
      : kind(k), smooth(sm), params(p), driver(drv), out_grid(obs), sampler(drv, obs.dx() / std::max(opt.refine, 1)) {
    p.validate();
    obs.validate();
    require(opt.refine >= 1, ErrorKind::parameter, "refine must be >= 1");
    second = (k == PathKind::TFLP2 || k == PathKind::TFLN2);
    noise = (k == PathKind::TFLN1 || k == PathKind::TFLN2);
    if (second) require(p.d != 0.0, ErrorKind::parameter, "TFLP II requires d != 0");
    if (smooth) {
      require(p.d > 0.5, ErrorKind::parameter, "smooth-regime simulation requires d > 1/2");
      require(!noise, ErrorKind::parameter, "smooth-regime simulation returns process paths only");
    }
    const double dxo = obs.dx();
    h = dxo / opt.refine;
    s_grid = obs;
    if (noise) {
      const double r = 1.0 / dxo;
      q = static_cast<long>(std::llround(r));
      require(q >= 1 && std::abs(r - q) < 1e-9 * r, ErrorKind::alignment,
              "noise: unit lag is not a multiple of the grid step");
      s_grid.x_max = obs.x_max + q * dxo;
      s_grid.n_cells = obs.n_cells + q;
    }
    std::int64_t j0 = 0;
    require(lattice_index(s_grid.x_min, h, j0), ErrorKind::alignment,
            "observation grid start must be a multiple of the integration step");
    J.resize(static_cast<size_t>(s_grid.n_points()));
    for (size_t i = 0; i < J.size(); ++i) J[i] = j0 + static_cast<std::int64_t>(i) * opt.refine;

    const double R_needed = detail::truncation_width(p.d, p.lambda, opt.tolerance);
    double R = trunc;
    if (R > 0.0) {
      const double bound = std::exp(-p.lambda * R) * std::pow(std::max(R, 1.0), std::max(p.d, 0.0));
      if (bound > opt.tolerance)
        fail(ErrorKind::tolerance, "truncation width " + std::to_string(R) + " leaves tail bound " +
                                       std::to_string(bound) + " above tolerance " + std::to_string(opt.tolerance));
    } else {
      R = R_needed;
    }
    W = static_cast<long>(std::ceil(R / h - 1e-9));
    k0 = std::min<std::int64_t>(J.front(), 0) - W;
    k1 = std::max<std::int64_t>(J.back(), 0) - 1;
    const long ncells = static_cast<long>(k1 - k0 + 1);
    if (ncells > opt.max_cells)
      fail(ErrorKind::tolerance, "simulation needs " + std::to_string(ncells) + " driver cells, budget is " +
                                     std::to_string(opt.max_cells));

    const detail::Kernel ker{second ? detail::KernelKind::second : detail::KernelKind::first, p.d, p.lambda};
    if (!smooth) {
      table = detail::decaying_cell_averages(ker, h, W);
    } else {
      table.resize(static_cast<size_t>(W));
      for (long m = 0; m < W; ++m) {
        const double a = m * h, b = (m + 1) * h;
        double diff = ker.decaying(b) - ker.decaying(a);
        if (m == 0) diff += ker.step();
        table[static_cast<size_t>(m)] = diff / h;
      }
    }
    lam_pow = second ? std::pow(p.lambda, -p.d) : 0.0;
    inv_gamma = 1.0 / std::tgamma(1.0 + p.d);
    const double n_eval = smooth ? static_cast<double>(std::max<std::int64_t>(J.back(), 0) -
                                                       std::min<std::int64_t>(J.front(), 0) + 1)
                                 : static_cast<double>(J.size() + 1);
    const double direct_cost = n_eval * static_cast<double>(W);
    const double nfft = static_cast<double>(ncells + W);
    use_fft = direct_cost > 6.0 * nfft * std::log2(std::max(nfft, 2.0));
    method = smooth ? "smooth" : "moving-average";
  }

  // Moving average sum_{m<W} table[m] dL_{j-1-m} for each lattice index in js.
  std::vector<double> moving_average(const std::vector<double>& dL, const std::vector<std::int64_t>& js) const {
    std::vector<double> out(js.size());
    if (use_fft) {
      const auto conv = detail::convolve(dL, table);
      for (size_t i = 0; i < js.size(); ++i) out[i] = conv[static_cast<size_t>(js[i] - 1 - k0)];
      return out;
    }
    for (size_t i = 0; i < js.size(); ++i) {
      const std::int64_t top = js[i] - 1 - k0;  // index of cell j-1
      double s = 0.0;
      for (long m = 0; m < W; ++m) s += table[static_cast<size_t>(m)] * dL[static_cast<size_t>(top - m)];
      out[i] = s;
    }
    return out;
  }

  SamplePath run(std::uint64_t seed) const {
    std::vector<double> dL(static_cast<size_t>(k1 - k0 + 1));
    sampler.fill(seed, k0, dL);
    std::vector<double> S(J.size());
    if (!smooth) {
      std::vector<std::int64_t> js = J;
      js.push_back(0);
      const auto M = moving_average(dL, js);
      const double M0 = M.back();
      std::vector<double> prefix;
      if (second) {
        prefix.resize(dL.size() + 1, 0.0);
        for (size_t i = 0; i < dL.size(); ++i) prefix[i + 1] = prefix[i] + dL[i];
      }
      for (size_t i = 0; i < J.size(); ++i) {
        double v = (M[i] - M0) * inv_gamma;
        if (second) v += lam_pow * (prefix[static_cast<size_t>(J[i] - k0)] - prefix[static_cast<size_t>(-k0)]);
        S[i] = v;
      }
    } else {
      const std::int64_t lo = std::min<std::int64_t>(J.front(), 0), hi = std::max<std::int64_t>(J.back(), 0);
      std::vector<std::int64_t> nodes(static_cast<size_t>(hi - lo + 1));
      for (size_t i = 0; i < nodes.size(); ++i) nodes[i] = lo + static_cast<std::int64_t>(i);
      const auto Z = moving_average(dL, nodes);
      // cumulative trapezoid anchored at node 0
      std::vector<double> I(nodes.size(), 0.0);
      const size_t i0 = static_cast<size_t>(-lo);
      for (size_t i = i0 + 1; i < nodes.size(); ++i) I[i] = I[i - 1] + 0.5 * h * (Z[i - 1] + Z[i]);
      for (size_t i = i0; i-- > 0;) I[i] = I[i + 1] - 0.5 * h * (Z[i] + Z[i + 1]);
      for (size_t i = 0; i < J.size(); ++i) S[i] = I[static_cast<size_t>(J[i] - lo)] * inv_gamma;
    }
    SamplePath path;
    path.grid = out_grid;
    path.meta = {params, driver, seed, kind, W * h, static_cast<int>(std::llround(out_grid.dx() / h)), method};
    if (!noise) {
      path.values = std::move(S);
    } else {
      path.values.resize(static_cast<size_t>(out_grid.n_points()));
      for (size_t i = 0; i < path.values.size(); ++i) path.values[i] = S[i + static_cast<size_t>(q)] - S[i];
    }
    return path;
  }
};

PathSimulator::PathSimulator(PathKind kind, const TemperedParams& p, const SampleGrid& obs,
                             const LevyDriverSpec& driver, double trunc_width, const SimOptions& opt, bool smooth)
    : impl_(std::make_unique<Impl>(kind, p, obs, driver, trunc_width, opt, smooth)) {}
PathSimulator::~PathSimulator() = default;
PathSimulator::PathSimulator(PathSimulator&&) noexcept = default;
SamplePath PathSimulator::run(std::uint64_t seed) const { return impl_->run(seed); }
double PathSimulator::trunc_width() const { return impl_->W * impl_->h; }
double PathSimulator::step() const { return impl_->h; }

SamplePath simulate_tflp1(const TemperedParams& p, const SampleGrid& obs, const LevyDriverSpec& driver,
                          double trunc_width, std::uint64_t seed, const SimOptions& opt) {
  return PathSimulator(PathKind::TFLP1, p, obs, driver, trunc_width, opt).run(seed);
}

SamplePath simulate_tflp2(const TemperedParams& p, const SampleGrid& obs, const LevyDriverSpec& driver,
                          double trunc_width, std::uint64_t seed, const SimOptions& opt) {
  return PathSimulator(PathKind::TFLP2, p, obs, driver, trunc_width, opt).run(seed);
}

SamplePath simulate_smooth_regime(const TemperedParams& p, const SampleGrid& obs, const LevyDriverSpec& driver,
                                  double trunc_width, std::uint64_t seed, PathKind kind, const SimOptions& opt) {
  require(kind == PathKind::TFLP1 || kind == PathKind::TFLP2, ErrorKind::parameter,
          "simulate_smooth_regime: kind must be TFLP1 or TFLP2");
  return PathSimulator(kind, p, obs, driver, trunc_width, opt, true).run(seed);
}

SamplePath noise_path(const SamplePath& path, double unit_lag) {
  require(path.meta.kind == PathKind::TFLP1 || path.meta.kind == PathKind::TFLP2, ErrorKind::parameter,
          "noise_path: input must be a process path");
  const double dx = path.grid.dx();
  const double r = unit_lag / dx;
  const long q = static_cast<long>(std::llround(r));
  require(unit_lag > 0.0 && q >= 1 && std::abs(r - q) < 1e-9 * r, ErrorKind::alignment,
          "noise_path: lag is not a positive multiple of the grid step");
  require(q < path.grid.n_cells, ErrorKind::length, "noise_path: lag exceeds the path length");
  SamplePath out;
  out.meta = path.meta;
  out.meta.kind = path.meta.kind == PathKind::TFLP1 ? PathKind::TFLN1 : PathKind::TFLN2;
  out.grid = path.grid;
  out.grid.n_cells = path.grid.n_cells - q;
  out.grid.x_max = path.grid.x(out.grid.n_cells);
  out.values.resize(static_cast<size_t>(out.grid.n_points()));
  for (size_t i = 0; i < out.values.size(); ++i) out.values[i] = path.values[i + static_cast<size_t>(q)] - path.values[i];
  return out;
}

std::vector<SamplePath> simulate_ensemble(PathKind kind, const TemperedParams& p, const SampleGrid& obs,
                                          const LevyDriverSpec& driver, double trunc_width,
                                          std::uint64_t first_seed, std::size_t count, const SimOptions& opt) {
  const PathSimulator sim(kind, p, obs, driver, trunc_width, opt);
  std::vector<SamplePath> out(count);
  parallel_for(count, [&](std::size_t i) { out[i] = sim.run(first_seed + i); });
  return out;
}

}  // namespace tflp
