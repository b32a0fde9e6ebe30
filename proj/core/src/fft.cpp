#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>

namespace tflp::detail {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <class T>
std::unique_ptr<T[], FftwFree> alloc(size_t n) {
  return std::unique_ptr<T[], FftwFree>(static_cast<T*>(fftw_malloc(sizeof(T) * n)));
}

struct Plans {
  fftw_plan fwd = nullptr, bwd = nullptr;
  ~Plans() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
};

}  // namespace

size_t next_fast_size(size_t n) {
  size_t best = 1;
  while (best < n) best <<= 1;
  // 3 * 2^k is often smaller and still fast
  for (size_t p = 3; p < best; p <<= 1)
    if (p >= n) {
      best = std::min(best, p);
      break;
    }
  return best;
}

std::vector<double> spectral_apply(const std::vector<double>& x, size_t n,
                                   const std::function<std::complex<double>(size_t)>& m) {
  const size_t nc = n / 2 + 1;
  auto in = alloc<double>(n);
  auto out = alloc<fftw_complex>(nc);
  Plans p;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    p.fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_c2r_1d(static_cast<int>(n), out.get(), in.get(), FFTW_ESTIMATE);
  }
  std::fill(in.get(), in.get() + n, 0.0);
  std::copy(x.begin(), x.begin() + std::min(x.size(), n), in.get());
  fftw_execute(p.fwd);
  for (size_t k = 0; k < nc; ++k) {
    const std::complex<double> v(out[k][0], out[k][1]);
    const std::complex<double> r = v * m(k);
    out[k][0] = r.real();
    out[k][1] = r.imag();
  }
  fftw_execute(p.bwd);
  std::vector<double> y(std::min(x.size(), n));
  const double s = 1.0 / static_cast<double>(n);
  for (size_t i = 0; i < y.size(); ++i) y[i] = in[i] * s;
  return y;
}

std::vector<double> power_spectrum(const std::vector<double>& x, size_t n) {
  const size_t nc = n / 2 + 1;
  auto in = alloc<double>(n);
  auto out = alloc<fftw_complex>(nc);
  Plans p;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    p.fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
  }
  std::fill(in.get(), in.get() + n, 0.0);
  std::copy(x.begin(), x.begin() + std::min(x.size(), n), in.get());
  fftw_execute(p.fwd);
  std::vector<double> pw(nc);
  for (size_t k = 0; k < nc; ++k) pw[k] = out[k][0] * out[k][0] + out[k][1] * out[k][1];
  return pw;
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  const size_t len = a.size() + b.size() - 1;
  const size_t n = next_fast_size(len);
  const size_t nc = n / 2 + 1;
  auto ia = alloc<double>(n);
  auto fa = alloc<fftw_complex>(nc);
  auto fb = alloc<fftw_complex>(nc);
  fftw_plan pa, pb, pinv;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    pa = fftw_plan_dft_r2c_1d(static_cast<int>(n), ia.get(), fa.get(), FFTW_ESTIMATE);
    pb = fftw_plan_dft_r2c_1d(static_cast<int>(n), ia.get(), fb.get(), FFTW_ESTIMATE);
    pinv = fftw_plan_dft_c2r_1d(static_cast<int>(n), fa.get(), ia.get(), FFTW_ESTIMATE);
  }
  std::fill(ia.get(), ia.get() + n, 0.0);
  std::copy(a.begin(), a.end(), ia.get());
  fftw_execute(pa);
  std::fill(ia.get(), ia.get() + n, 0.0);
  std::copy(b.begin(), b.end(), ia.get());
  fftw_execute(pb);
  for (size_t k = 0; k < nc; ++k) {
    const double re = fa[k][0] * fb[k][0] - fa[k][1] * fb[k][1];
    const double im = fa[k][0] * fb[k][1] + fa[k][1] * fb[k][0];
    fa[k][0] = re;
    fa[k][1] = im;
  }
  fftw_execute(pinv);
  std::vector<double> c(len);
  const double s = 1.0 / static_cast<double>(n);
  for (size_t i = 0; i < len; ++i) c[i] = ia[i] * s;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(pa);
    fftw_destroy_plan(pb);
    fftw_destroy_plan(pinv);
  }
  return c;
}

}  // namespace tflp::detail
