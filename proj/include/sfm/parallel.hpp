#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace sfm {

// Number of worker threads the parallel kernels may use. Honors the
// SFM_THREADS environment variable (values < 1 are treated as 1).
int max_threads();

// Apply fn(i) for i in [0, n). The parallel flavor distributes iterations
// over OpenMP threads; results must be written to disjoint slots so the
// output is independent of the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);
void serial_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Pairwise (cascade) summation over a fixed index order. Used as the single
// reduction primitive so sums are bit-stable across thread counts.
double pairwise_sum(std::span<const double> values);

}  // namespace sfm
