#pragma once
// Batch evaluation kernels: the data-parallel inner loops of the library.
//
// Each kernel has a _serial reference and a _parallel version. The parallel
// versions distribute independent output elements across OpenMP threads;
// per-element arithmetic is identical to the serial code, so outputs match
// the reference bitwise for any thread count. Unsuffixed names dispatch to
// the parallel version.

#include <cstddef>
#include <span>
#include <vector>

#include "agd/mixture.hpp"

namespace agd {

// J x M matrix of log k_h(y_m - theta_j), row-major in j.
void kernel_log_matrix_serial(const ParticleMixture& mix, GaussianKernel kernel,
                              std::span<const double> points, std::size_t m,
                              std::vector<double>& out);
void kernel_log_matrix_parallel(const ParticleMixture& mix,
                                GaussianKernel kernel,
                                std::span<const double> points, std::size_t m,
                                std::vector<double>& out);
inline void kernel_log_matrix(const ParticleMixture& mix, GaussianKernel kernel,
                              std::span<const double> points, std::size_t m,
                              std::vector<double>& out) {
    kernel_log_matrix_parallel(mix, kernel, points, m, out);
}

// Per-point log mixture density from a J x M log-kernel matrix:
// out[m] = log sum_j lambda_j exp(logk[j, m]). The per-point log-sum-exp
// runs over atoms in index order, matching log_mixture_density exactly.
void log_mixture_from_matrix_serial(std::span<const double> log_weights,
                                    std::span<const double> logk,
                                    std::size_t m, std::vector<double>& out);
void log_mixture_from_matrix_parallel(std::span<const double> log_weights,
                                      std::span<const double> logk,
                                      std::size_t m, std::vector<double>& out);
inline void log_mixture_from_matrix(std::span<const double> log_weights,
                                    std::span<const double> logk,
                                    std::size_t m, std::vector<double>& out) {
    log_mixture_from_matrix_parallel(log_weights, logk, m, out);
}

// log weights with zeros mapped to -inf.
std::vector<double> log_weights_of(std::span<const double> weights);

}  // namespace agd
