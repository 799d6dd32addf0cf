#include "agd/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "agd/numeric.hpp"

namespace agd {

namespace {

inline void fill_row(const ParticleMixture& mix, GaussianKernel kernel,
                     std::span<const double> points, std::size_t m,
                     std::size_t j, double* out_row) {
    const std::size_t d = mix.dim();
    const double h = kernel.bandwidth;
    const double norm = -0.5 * static_cast<double>(d) * std::log(2.0 * M_PI * h * h);
    const double inv2h2 = 1.0 / (2.0 * h * h);
    const auto theta = mix.atom(j);
    for (std::size_t i = 0; i < m; ++i) {
        const double* y = points.data() + i * d;
        double sq = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
            const double diff = y[c] - theta[c];
            sq += diff * diff;
        }
        out_row[i] = -sq * inv2h2 + norm;
    }
}

inline double point_lse(std::span<const double> log_weights,
                        std::span<const double> logk, std::size_t m,
                        std::size_t j_count, std::size_t i) {
    double best = neg_inf;
    for (std::size_t j = 0; j < j_count; ++j) {
        const double v = log_weights[j] + logk[j * m + i];
        if (v > best) best = v;
    }
    if (best == neg_inf) return neg_inf;
    double s = 0.0;
    for (std::size_t j = 0; j < j_count; ++j) {
        const double v = log_weights[j] + logk[j * m + i];
        if (v == neg_inf) continue;
        s += std::exp(v - best);
    }
    return best + std::log(s);
}

}  // namespace

void kernel_log_matrix_serial(const ParticleMixture& mix, GaussianKernel kernel,
                              std::span<const double> points, std::size_t m,
                              std::vector<double>& out) {
    const std::size_t j_count = mix.atom_count();
    if (points.size() != m * mix.dim()) {
        throw std::invalid_argument("kernel_log_matrix: point buffer mismatch");
    }
    out.assign(j_count * m, 0.0);
    serial_for(j_count, [&](std::size_t j) {
        fill_row(mix, kernel, points, m, j, out.data() + j * m);
    });
}

void kernel_log_matrix_parallel(const ParticleMixture& mix,
                                GaussianKernel kernel,
                                std::span<const double> points, std::size_t m,
                                std::vector<double>& out) {
    const std::size_t j_count = mix.atom_count();
    if (points.size() != m * mix.dim()) {
        throw std::invalid_argument("kernel_log_matrix: point buffer mismatch");
    }
    out.assign(j_count * m, 0.0);
    parallel_for(j_count, [&](std::size_t j) {
        fill_row(mix, kernel, points, m, j, out.data() + j * m);
    });
}

void log_mixture_from_matrix_serial(std::span<const double> log_weights,
                                    std::span<const double> logk,
                                    std::size_t m, std::vector<double>& out) {
    const std::size_t j_count = log_weights.size();
    out.assign(m, 0.0);
    serial_for(m, [&](std::size_t i) {
        out[i] = point_lse(log_weights, logk, m, j_count, i);
    });
}

void log_mixture_from_matrix_parallel(std::span<const double> log_weights,
                                      std::span<const double> logk,
                                      std::size_t m, std::vector<double>& out) {
    const std::size_t j_count = log_weights.size();
    out.assign(m, 0.0);
    parallel_for(m, [&](std::size_t i) {
        out[i] = point_lse(log_weights, logk, m, j_count, i);
    });
}

std::vector<double> log_weights_of(std::span<const double> weights) {
    std::vector<double> lw(weights.size());
    for (std::size_t j = 0; j < weights.size(); ++j) {
        lw[j] = weights[j] > 0.0 ? std::log(weights[j]) : neg_inf;
    }
    return lw;
}

}  // namespace agd
