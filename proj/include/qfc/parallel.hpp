#pragma once

#include <cstddef>

// Data-parallel loop kernels. Every hot sweep in the library goes through
// for_each_index so the OpenMP path and the serial reference path stay
// interchangeable; results must not depend on the thread count (each index
// writes its own slot, no reductions inside the kernel).

namespace qfc::par {

template <typename Fn>
void for_each_index_serial(std::size_t n, Fn&& fn) {
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

template <typename Fn>
void for_each_index(std::size_t n, int threads, Fn&& fn) {
  if (threads <= 1) {
    for_each_index_serial(n, fn);
    return;
  }
#pragma omp parallel for schedule(static) num_threads(threads)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    fn(static_cast<std::size_t>(i));
}

}  // namespace qfc::par
