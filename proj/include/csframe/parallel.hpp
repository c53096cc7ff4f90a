#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace csframe {

// Execution policy for the data-parallel kernels (frame assembly, sampled
// norm scans, falsification campaigns, subset enumeration). The serial path
// is the reference implementation; the OpenMP path must write only to
// per-index slots so that both paths produce bit-identical results. Tests
// compare the two; tools/bench.cpp times them against each other.
enum class Exec { serial, parallel };

template <typename F>
void for_indexed(Exec policy, std::ptrdiff_t n, F&& f) {
#ifdef _OPENMP
    if (policy == Exec::parallel && n > 1) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) f(i);
        return;
    }
#else
    (void)policy;
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) f(i);
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace csframe
