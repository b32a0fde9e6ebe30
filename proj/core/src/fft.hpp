#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace tflp::detail {

size_t next_fast_size(size_t n);

// Full linear convolution c[k] = sum_j a[j] b[k-j], length a.size() + b.size() - 1.
std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b);

// Real-to-complex transform of x zero-padded to n, multiplication by m(k) for
// k = 0..n/2, inverse transform, first x.size() entries returned. The inverse
// is normalized so m == 1 reproduces x.
std::vector<double> spectral_apply(const std::vector<double>& x, size_t n,
                                   const std::function<std::complex<double>(size_t)>& m);

// Half spectrum |X_k|^2 of x zero-padded to n, k = 0..n/2.
std::vector<double> power_spectrum(const std::vector<double>& x, size_t n);

}  // namespace tflp::detail
