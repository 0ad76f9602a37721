#pragma once

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pretop {

/// Execution mode for the enumeration scans (sheaf-universe sweeps, formula
/// batteries). Results are index-deterministic in both modes; the serial
/// path is the reference the parallel one is tested against.
enum class ExecMode { Serial, OpenMP };

inline ExecMode default_exec_mode() {
#ifdef _OPENMP
    if (std::getenv("PRETOP_SERIAL")) return ExecMode::Serial;
    return ExecMode::OpenMP;
#else
    return ExecMode::Serial;
#endif
}

template <class F>
void parallel_for(std::size_t n, ExecMode mode, F&& body) {
#ifdef _OPENMP
    if (mode == ExecMode::OpenMP) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(n); ++i) body(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)mode;
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

} // namespace pretop
