#ifndef QCORR_PARALLEL_HPP
#define QCORR_PARALLEL_HPP

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qcorr {

/// Index-parallel loop. Each body invocation must write only to slots owned
/// by its index, so the parallel result is bit-identical to the serial one.
template <class Body>
void parallel_for(int n, bool parallel, Body&& body) {
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
#else
    (void)parallel;
#endif
    for (int i = 0; i < n; ++i) body(i);
}

} // namespace qcorr

#endif
