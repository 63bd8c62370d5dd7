#pragma once

// Include this instead of <omp.h> so the library still builds without OpenMP.

#if defined(_OPENMP)
#include <omp.h>
namespace flexagg {
constexpr bool use_omp = true;
inline int max_threads() { return omp_get_max_threads(); }
inline void set_threads(int n) {
    if (n > 0) omp_set_num_threads(n);
}
} // namespace flexagg
#else
#pragma GCC diagnostic ignored "-Wunknown-pragmas"
namespace flexagg {
constexpr bool use_omp = false;
inline int max_threads() { return 1; }
inline void set_threads(int) {}
} // namespace flexagg
#endif
