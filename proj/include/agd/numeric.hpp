#pragma once
// Small numeric helpers shared across modules: stable log-sum-exp and a
// deterministic parallel-map pattern.
//
// Parallel loops in this library only ever write out[i] from iteration i
// (map, not reduce); sums over mapped buffers are done serially. This keeps
// every result bit-identical for any OMP_NUM_THREADS, which the trace
// determinism contract relies on.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace agd {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// log(sum_i exp(x_i)) with max subtraction; -inf entries are skipped.
inline double log_sum_exp(std::span<const double> x) {
    double m = neg_inf;
    for (double v : x) {
        if (v > m) m = v;
    }
    if (m == neg_inf) return neg_inf;
    if (std::isinf(m)) return m;  // +inf dominates
    double s = 0.0;
    for (double v : x) {
        if (v == neg_inf) continue;
        s += std::exp(v - m);
    }
    return m + std::log(s);
}

inline double log_sum_exp(const std::vector<double>& x) {
    return log_sum_exp(std::span<const double>(x));
}

// Serial reference loop, kept alongside the parallel version for tests and
// the benchmark target.
template <typename Fn>
void serial_for(std::size_t n, Fn&& fn) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

// Parallel map: fn(i) must touch only state owned by index i.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
#ifdef _OPENMP
    const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < sn; ++i) fn(static_cast<std::size_t>(i));
#else
    serial_for(n, fn);
#endif
}

// Serial sum of a mapped buffer; pairs with parallel_for for deterministic
// reductions.
inline double sum(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
}

}  // namespace agd
