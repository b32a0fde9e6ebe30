#include "tflp/levy_driver.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "tflp/errors.hpp"
#include "tflp/rng.hpp"
#include "tflp/special_functions.hpp"

namespace tflp {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double get_num(const std::map<std::string, std::string>& cfg, const std::string& key, double dflt) {
  auto it = cfg.find(key);
  if (it == cfg.end()) return dflt;
  try {
    size_t pos = 0;
    double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::parameter, "driver config: cannot parse " + key + " = '" + it->second + "'");
  }
}

std::string get_str(const std::map<std::string, std::string>& cfg, const std::string& key,
                    const std::string& dflt) {
  auto it = cfg.find(key);
  return it == cfg.end() ? dflt : it->second;
}

// Tempered stable with alpha == 1 has no Gamma(-alpha) form; handled separately.
bool alpha_is_one(double alpha) { return std::abs(alpha - 1.0) < 1e-12; }

std::complex<double> ts_one_sided_exponent(const TemperedStable& ts, double theta) {
  const double a = ts.alpha, lam = ts.lambda_noise, c = ts.scale;
  const std::complex<double> s(lam, -theta);
  if (alpha_is_one(a)) return c * (s * std::log(s / lam) - s + lam);
  const double g = std::tgamma(-a);
  return c * g * (std::pow(s, a) - std::pow(lam, a) + std::complex<double>(0.0, theta) * a * std::pow(lam, a - 1.0));
}

}  // namespace

void SampleGrid::validate() const {
  require(std::isfinite(x_min) && std::isfinite(x_max) && x_min < x_max, ErrorKind::parameter,
          "SampleGrid: requires x_min < x_max");
  require(n_cells >= 1, ErrorKind::parameter, "SampleGrid: requires n_cells >= 1");
}

void LevyDriverSpec::validate() const {
  std::visit(overloaded{
                 [](const CompoundPoisson& cp) {
                   require(cp.intensity >= 0.0 && std::isfinite(cp.intensity), ErrorKind::parameter,
                           "CompoundPoisson: intensity must be >= 0");
                   std::visit(overloaded{
                                  [](const UniformSymmetric& u) {
                                    require(u.a > 0.0, ErrorKind::parameter, "UniformSymmetric: a must be > 0");
                                  },
                                  [](const GaussianJumps& g) {
                                    require(g.sigma > 0.0, ErrorKind::parameter, "GaussianJumps: sigma must be > 0");
                                  },
                                  [](const TwoPoint& t) {
                                    require(t.c > 0.0, ErrorKind::parameter, "TwoPoint: c must be > 0");
                                  }},
                              cp.jumps);
                 },
                 [](const TemperedStable& ts) {
                   require(ts.alpha > 0.0 && ts.alpha < 2.0, ErrorKind::parameter,
                           "TemperedStable: alpha must lie in (0, 2)");
                   require(ts.lambda_noise > 0.0, ErrorKind::parameter, "TemperedStable: lambda_noise must be > 0");
                   require(ts.scale > 0.0, ErrorKind::parameter, "TemperedStable: scale must be > 0");
                 },
                 [](const GaussianValidation& g) {
                   require(g.sigma > 0.0, ErrorKind::parameter, "GaussianValidation: sigma must be > 0");
                 }},
             kind);
}

std::map<std::string, std::string> LevyDriverSpec::to_config() const {
  std::map<std::string, std::string> m;
  std::visit(overloaded{
                 [&](const CompoundPoisson& cp) {
                   m["driver"] = "cpois";
                   m["intensity"] = fmt(cp.intensity);
                   std::visit(overloaded{
                                  [&](const UniformSymmetric& u) {
                                    m["jumps"] = "uniform";
                                    m["a"] = fmt(u.a);
                                  },
                                  [&](const GaussianJumps& g) {
                                    m["jumps"] = "gaussian";
                                    m["sigma"] = fmt(g.sigma);
                                  },
                                  [&](const TwoPoint& t) {
                                    m["jumps"] = "twopoint";
                                    m["c"] = fmt(t.c);
                                  }},
                              cp.jumps);
                 },
                 [&](const TemperedStable& ts) {
                   m["driver"] = "tstable";
                   m["alpha"] = fmt(ts.alpha);
                   m["lambda_noise"] = fmt(ts.lambda_noise);
                   m["scale"] = fmt(ts.scale);
                   m["symmetric"] = ts.symmetric ? "true" : "false";
                 },
                 [&](const GaussianValidation& g) {
                   m["driver"] = "gauss";
                   m["sigma"] = fmt(g.sigma);
                 }},
             kind);
  return m;
}

LevyDriverSpec LevyDriverSpec::from_config(const std::map<std::string, std::string>& cfg) {
  LevyDriverSpec spec;
  const std::string d = get_str(cfg, "driver", "cpois");
  if (d == "cpois") {
    CompoundPoisson cp;
    cp.intensity = get_num(cfg, "intensity", 1.0);
    const std::string j = get_str(cfg, "jumps", "uniform");
    if (j == "uniform")
      cp.jumps = UniformSymmetric{get_num(cfg, "a", 1.0)};
    else if (j == "gaussian")
      cp.jumps = GaussianJumps{get_num(cfg, "sigma", 1.0)};
    else if (j == "twopoint")
      cp.jumps = TwoPoint{get_num(cfg, "c", 1.0)};
    else
      fail(ErrorKind::parameter, "unknown jump law '" + j + "'");
    spec.kind = cp;
  } else if (d == "tstable") {
    TemperedStable ts;
    ts.alpha = get_num(cfg, "alpha", 1.5);
    ts.lambda_noise = get_num(cfg, "lambda_noise", 1.0);
    ts.scale = get_num(cfg, "scale", 1.0);
    const std::string sym = get_str(cfg, "symmetric", "true");
    require(sym == "true" || sym == "false", ErrorKind::parameter, "symmetric must be true or false");
    ts.symmetric = sym == "true";
    spec.kind = ts;
  } else if (d == "gauss") {
    spec.kind = GaussianValidation{get_num(cfg, "sigma", 1.0)};
  } else {
    fail(ErrorKind::parameter, "unknown driver '" + d + "'");
  }
  spec.validate();
  return spec;
}

double second_moment(const LevyDriverSpec& spec) {
  return std::visit(overloaded{
                        [](const CompoundPoisson& cp) {
                          const double ej2 = std::visit(overloaded{
                                                            [](const UniformSymmetric& u) { return u.a * u.a / 3.0; },
                                                            [](const GaussianJumps& g) { return g.sigma * g.sigma; },
                                                            [](const TwoPoint& t) { return t.c * t.c; }},
                                                        cp.jumps);
                          return cp.intensity * ej2;
                        },
                        [](const TemperedStable& ts) {
                          const double side = ts.scale * std::tgamma(2.0 - ts.alpha) *
                                              std::pow(ts.lambda_noise, ts.alpha - 2.0);
                          return ts.symmetric ? 2.0 * side : side;
                        },
                        [](const GaussianValidation& g) { return g.sigma * g.sigma; }},
                    spec.kind);
}

std::complex<double> char_exponent(const LevyDriverSpec& spec, double theta) {
  return std::visit(
      overloaded{[&](const CompoundPoisson& cp) -> std::complex<double> {
                   const double phi = std::visit(overloaded{
                                                     [&](const UniformSymmetric& u) {
                                                       const double x = u.a * theta;
                                                       return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
                                                     },
                                                     [&](const GaussianJumps& g) {
                                                       return std::exp(-0.5 * g.sigma * g.sigma * theta * theta);
                                                     },
                                                     [&](const TwoPoint& t) { return std::cos(t.c * theta); }},
                                                 cp.jumps);
                   return cp.intensity * (phi - 1.0);
                 },
                 [&](const TemperedStable& ts) -> std::complex<double> {
                   const auto one = ts_one_sided_exponent(ts, theta);
                   return ts.symmetric ? std::complex<double>(2.0 * one.real(), 0.0) : one;
                 },
                 [&](const GaussianValidation& g) -> std::complex<double> {
                   return -0.5 * g.sigma * g.sigma * theta * theta;
                 }},
      spec.kind);
}

IncrementSampler::IncrementSampler(const LevyDriverSpec& spec, double h) : spec_(spec), h_(h) {
  spec_.validate();
  require(h > 0.0 && std::isfinite(h), ErrorKind::parameter, "IncrementSampler: cell width must be > 0");
  if (const auto* ts = std::get_if<TemperedStable>(&spec_.kind)) {
    const double a = ts->alpha, lam = ts->lambda_noise, c = ts->scale;
    bool exact = a < 1.9 && !alpha_is_one(a);
    if (exact) {
      const double g = std::tgamma(-a);
      ts_sigma_ = std::pow(-h * c * g * std::cos(kPi * a / 2.0), 1.0 / a);
      const double t = std::tan(kPi * a / 2.0);
      ts_B_ = std::atan(t) / a;
      ts_S_ = std::pow(1.0 + t * t, 1.0 / (2.0 * a));
      ts_shift_ = a > 1.0 ? 10.0 * ts_sigma_ : 0.0;
      ts_center_ = h * c * g * a * std::pow(lam, a - 1.0);
      const double acceptance = std::exp(-lam * ts_shift_ + h * c * g * std::pow(lam, a));
      if (acceptance < 0.05) exact = false;
    }
    if (!exact) {
      fallback_ = true;
      fb_eps_ = std::min(0.02, 0.5 / lam);
      fb_rate_ = c * std::pow(lam, a) * upper_gamma(-a, lam * fb_eps_);
      // compensator of the large jumps on one side, per unit time
      ts_center_ = c * std::pow(lam, a - 1.0) * upper_gamma(1.0 - a, lam * fb_eps_);
      fb_small_sd_ = std::sqrt(h * c * std::pow(lam, a - 2.0) * lower_gamma(2.0 - a, lam * fb_eps_));
    }
  }
}

namespace {

// One-sided compensated tempered stable increment, exact rejection mode.
double ts_exact_draw(CellEngine& eng, double alpha, double lam, double sigma, double B, double S,
                     double shift, double center) {
  for (;;) {
    const double V = kPi * (eng.uniform_open() - 0.5);
    const double W = -std::log(eng.uniform_open());
    const double X = S * std::sin(alpha * (V + B)) / std::pow(std::cos(V), 1.0 / alpha) *
                     std::pow(std::cos(V - alpha * (V + B)) / W, (1.0 - alpha) / alpha);
    const double Y = sigma * X;
    const double e = -lam * (Y + shift);
    if (e >= 0.0 || eng.uniform_open() < std::exp(e)) return Y + center;
  }
}

double ts_fallback_draw(CellEngine& eng, double alpha, double lam, double eps, double rate, double comp,
                        double small_sd, double h) {
  double sum = 0.0;
  const double mean = rate * h;
  if (mean > 0.0) {
    std::poisson_distribution<long> pois(mean);
    const long n = pois(eng);
    for (long i = 0; i < n; ++i) {
      for (;;) {
        const double x = eps * std::pow(eng.uniform_open(), -1.0 / alpha);
        if (eng.uniform_open() < std::exp(-lam * (x - eps))) {
          sum += x;
          break;
        }
      }
    }
  }
  std::normal_distribution<double> nd(0.0, 1.0);
  return sum - comp * h + small_sd * nd(eng);
}

}  // namespace

double IncrementSampler::operator()(std::uint64_t seed, std::int64_t cell) const {
  CellEngine eng(seed, 0, cell);
  return std::visit(
      overloaded{
          [&](const CompoundPoisson& cp) -> double {
            const double mean = cp.intensity * h_;
            if (mean <= 0.0) return 0.0;
            std::poisson_distribution<long> pois(mean);
            const long n = pois(eng);
            if (n == 0) return 0.0;
            return std::visit(overloaded{
                                  [&](const UniformSymmetric& u) {
                                    double s = 0.0;
                                    for (long i = 0; i < n; ++i) s += u.a * (2.0 * eng.uniform_open() - 1.0);
                                    return s;
                                  },
                                  [&](const GaussianJumps& g) {
                                    std::normal_distribution<double> nd(0.0, 1.0);
                                    return g.sigma * std::sqrt(static_cast<double>(n)) * nd(eng);
                                  },
                                  [&](const TwoPoint& t) {
                                    double s = 0.0;
                                    for (long i = 0; i < n; ++i) s += (eng() >> 63) ? t.c : -t.c;
                                    return s;
                                  }},
                              cp.jumps);
          },
          [&](const TemperedStable& ts) -> double {
            auto side = [&]() {
              if (fallback_)
                return ts_fallback_draw(eng, ts.alpha, ts.lambda_noise, fb_eps_, fb_rate_, ts_center_,
                                        fb_small_sd_, h_);
              return ts_exact_draw(eng, ts.alpha, ts.lambda_noise, ts_sigma_, ts_B_, ts_S_, ts_shift_,
                                   ts_center_);
            };
            const double up = side();
            return ts.symmetric ? up - side() : up;
          },
          [&](const GaussianValidation& g) -> double {
            std::normal_distribution<double> nd(0.0, 1.0);
            return g.sigma * std::sqrt(h_) * nd(eng);
          }},
      spec_.kind);
}

void IncrementSampler::fill(std::uint64_t seed, std::int64_t first_cell, std::vector<double>& out) const {
  for (size_t i = 0; i < out.size(); ++i) out[i] = (*this)(seed, first_cell + static_cast<std::int64_t>(i));
}

bool lattice_index(double x, double h, std::int64_t& k) {
  const double r = x / h;
  const double n = std::nearbyint(r);
  if (std::abs(r - n) > 1e-9 * std::max(1.0, std::abs(r))) return false;
  k = static_cast<std::int64_t>(n);
  return true;
}

std::vector<double> sample_increments(const LevyDriverSpec& spec, const SampleGrid& grid, std::uint64_t seed) {
  grid.validate();
  IncrementSampler sampler(spec, grid.dx());
  std::int64_t first = 0;
  if (!lattice_index(grid.x_min, grid.dx(), first)) first = 0;
  std::vector<double> out(static_cast<size_t>(grid.n_cells));
  sampler.fill(seed, first, out);
  return out;
}

}  // namespace tflp
