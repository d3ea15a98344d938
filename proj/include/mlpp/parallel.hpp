#pragma once

#include <cstdint>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mlpp {

enum class Exec { seq, par };

/// Execution policy for the data-parallel kernels (particle propagation,
/// episode batches, trial pools). `seq` is the reference path; `par` runs the
/// same per-index work under OpenMP. Kernels are written so both paths
/// produce bit-identical results.
struct ExecPolicy {
    Exec mode = Exec::par;
    int threads = 0;  // 0 = OpenMP runtime default
};

inline bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

template <class F>
void parallel_for(std::int64_t n, const ExecPolicy& pol, F&& f) {
#ifdef _OPENMP
    if (pol.mode == Exec::par) {
        if (pol.threads > 0) {
#pragma omp parallel for schedule(static) num_threads(pol.threads)
            for (std::int64_t i = 0; i < n; ++i) f(i);
        } else {
#pragma omp parallel for schedule(static)
            for (std::int64_t i = 0; i < n; ++i) f(i);
        }
        return;
    }
#endif
    for (std::int64_t i = 0; i < n; ++i) f(i);
}

/// Dynamic scheduling variant for uneven work items (whole trials).
template <class F>
void parallel_for_dynamic(std::int64_t n, const ExecPolicy& pol, F&& f) {
#ifdef _OPENMP
    if (pol.mode == Exec::par) {
        if (pol.threads > 0) {
#pragma omp parallel for schedule(dynamic) num_threads(pol.threads)
            for (std::int64_t i = 0; i < n; ++i) f(i);
        } else {
#pragma omp parallel for schedule(dynamic)
            for (std::int64_t i = 0; i < n; ++i) f(i);
        }
        return;
    }
#endif
    for (std::int64_t i = 0; i < n; ++i) f(i);
}

}  // namespace mlpp
