#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace tflp {

// Worker count: TFLP_THREADS if set and positive, otherwise hardware concurrency.
unsigned default_threads();

// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = default_threads()).
// Iterations must write to disjoint outputs; exceptions are rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned threads = 0);

// Pairwise summation; result depends only on the order of v.
double pairwise_sum(const double* v, std::size_t n);
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace tflp
