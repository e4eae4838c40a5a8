#pragma once

#include <cstddef>

#if defined(CAUCHYLENS_HAVE_OPENMP)
#include <omp.h>
#endif

namespace cauchylens::par {

// Execution policy for the hot loops (field evaluation over many targets,
// Gram assembly).  Every parallel loop writes one independent slot per index,
// so Serial and Parallel produce bit-identical results; tests assert that.
enum class Mode { Serial, Parallel };

inline Mode default_mode() {
#if defined(CAUCHYLENS_HAVE_OPENMP)
  return Mode::Parallel;
#else
  return Mode::Serial;
#endif
}

template <class Fn>
void for_index(std::size_t n, Mode mode, Fn&& fn) {
#if defined(CAUCHYLENS_HAVE_OPENMP)
  if (mode == Mode::Parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      fn(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)mode;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace cauchylens::par
