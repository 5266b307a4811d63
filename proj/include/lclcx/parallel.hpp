#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lclcx {

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Runs fn(i) for i in [0, n). threads == 1 runs the plain serial loop;
/// threads == 0 uses the machine default. Results must be written to
/// per-index slots so that serial and parallel runs agree exactly.
template <typename Fn>
void parallel_for(size_t n, int threads, Fn&& fn) {
#ifdef _OPENMP
  if (threads != 1 && n > 1) {
    std::exception_ptr err = nullptr;
    int nt = threads > 0 ? threads : omp_get_max_threads();
    int chunk = static_cast<int>(std::max<size_t>(1, n / (8 * static_cast<size_t>(nt))));
#pragma omp parallel for schedule(dynamic, chunk) num_threads(nt)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      try {
        fn(static_cast<size_t>(i));
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    return;
  }
#else
  (void)threads;
#endif
  for (size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace lclcx
