#include <cmath>

#include <benchmark/benchmark.h>

#include "tflp/analytics.hpp"
#include "tflp/special_functions.hpp"
#include "tflp/stoch_integration.hpp"
#include "tflp/tempered_calculus.hpp"

using namespace tflp;

namespace {

LevyDriverSpec cpois() {
  LevyDriverSpec s;
  s.kind = CompoundPoisson{1.0, UniformSymmetric{1.0}};
  return s;
}

void BM_BesselK(benchmark::State& st) {
  const double z = std::ldexp(1.0, static_cast<int>(st.range(0)) - 4);
  double nu = 0.0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(bessel_k(nu, z));
    nu = nu > 5.0 ? 0.0 : nu + 0.37;
  }
}
BENCHMARK(BM_BesselK)->DenseRange(0, 8, 4);

void BM_CovTflp2(benchmark::State& st) {
  const TemperedParams p{0.3, 0.5};
  for (auto _ : st) benchmark::DoNotOptimize(cov_tflp2(p, 1.0, 2.5, 1.0));
}
BENCHMARK(BM_CovTflp2);

void BM_AcvfTfln2(benchmark::State& st) {
  const TemperedParams p{0.2, 0.3};
  for (auto _ : st) benchmark::DoNotOptimize(acvf_tfln2(p, 10.0, 1.0));
}
BENCHMARK(BM_AcvfTfln2);

void BM_SimulatePath(benchmark::State& st) {
  const long n = st.range(0);
  const TemperedParams p{0.3, 0.5};
  const PathSimulator sim(PathKind::TFLP1, p, SampleGrid{0.0, static_cast<double>(n) / 64.0, n}, cpois(), 0.0);
  std::uint64_t seed = 1;
  for (auto _ : st) benchmark::DoNotOptimize(sim.run(seed++).values.data());
  st.SetItemsProcessed(st.iterations() * n);
}
BENCHMARK(BM_SimulatePath)->RangeMultiplier(8)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMillisecond);

void BM_FracDerivative(benchmark::State& st) {
  const long n = st.range(0);
  const auto f = GridFunction::sample(SampleGrid{-8.0, 8.0, n}, [](double x) { return std::exp(-x * x); });
  for (auto _ : st) benchmark::DoNotOptimize(frac_derivative_minus(f, 0.5, 1.0).values.data());
  st.SetItemsProcessed(st.iterations() * n);
}
BENCHMARK(BM_FracDerivative)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond);

void BM_FourierMultiplier(benchmark::State& st) {
  const long n = st.range(0);
  const auto f = GridFunction::sample(SampleGrid{-8.0, 8.0, n}, [](double x) { return std::exp(-x * x); });
  for (auto _ : st) benchmark::DoNotOptimize(fourier_multiplier(f, 0.5, 1.0, Side::minus).values.data());
  st.SetItemsProcessed(st.iterations() * n);
}
BENCHMARK(BM_FourierMultiplier)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond);

void BM_IsometryDraw(benchmark::State& st) {
  TransformOptions opt;
  opt.dx = 1.0 / 128.0;
  const auto T = transform_integrand(ElementaryFunction::indicator(1.0), TemperedParams{-0.3, 1.0}, Target::TFLP2, opt);
  const IntegralSampler s(T, cpois());
  std::uint64_t seed = 1;
  for (auto _ : st) benchmark::DoNotOptimize(s(seed++));
}
BENCHMARK(BM_IsometryDraw);

}  // namespace
BENCHMARK_MAIN();
