#include "agd/update.hpp"

#include <cmath>
#include <stdexcept>

#include "agd/numeric.hpp"

namespace agd {

std::vector<double> apply_transform_update(std::span<const double> weights,
                                           std::span<const double> gradient,
                                           const TransformConfig& config,
                                           double eta) {
    if (weights.size() != gradient.size()) {
        throw std::invalid_argument("update: weight/gradient size mismatch");
    }
    const std::size_t j_count = weights.size();
    std::vector<double> logw(j_count, neg_inf);
    for (std::size_t j = 0; j < j_count; ++j) {
        if (weights[j] == 0.0) continue;
        const double v = gradient[j] + config.kappa;
        logw[j] = std::log(weights[j]) +
                  log_gamma_eval(v, config, eta,
                                 static_cast<std::ptrdiff_t>(j));
    }
    const double lse = log_sum_exp(logw);
    if (!std::isfinite(lse)) {
        throw std::runtime_error("update: degenerate normalization");
    }
    std::vector<double> out(j_count, 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < j_count; ++j) {
        if (logw[j] == neg_inf) continue;
        out[j] = std::exp(logw[j] - lse);
        total += out[j];
    }
    for (double& w : out) w /= total;
    return out;
}

}  // namespace agd
