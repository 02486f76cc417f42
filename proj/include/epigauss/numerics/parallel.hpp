#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace epigauss {

/// Worker count used by parallel loops. Defaults to EPIGAUSS_THREADS when set,
/// otherwise the hardware concurrency.
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Runs body(begin, end) over a static partition of [0, count). Results must
/// not depend on the partition; callers write into per-index slots.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

/// Pairwise (tree) summation; the association order depends only on the length.
double pairwise_sum(std::span<const double> values);

}  // namespace epigauss
