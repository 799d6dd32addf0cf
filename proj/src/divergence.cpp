#include "agd/divergence.hpp"

#include <cmath>
#include <stdexcept>

namespace agd {

double weighted_mean(std::span<const double> weights,
                     std::span<const double> values) {
    if (weights.size() != values.size()) {
        throw std::invalid_argument("weighted_mean: size mismatch");
    }
    double s = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        s += weights[j] * values[j];
    }
    return s;
}

std::optional<double> elbo_renyi_bound(std::span<const double> weights,
                                       std::span<const double> gradient,
                                       AlphaParam alpha) {
    const double mb = weighted_mean(weights, gradient);
    if (alpha.at_one()) {
        return -mb;
    }
    const double a = alpha.value;
    const double arg = (a - 1.0) * mb + 1.0;
    if (!(arg > 0.0)) {
        return std::nullopt;  // bound undefined (infinite divergence)
    }
    return std::log(arg) / (1.0 - a);
}

}  // namespace agd
