#include "agd/mixture.hpp"

#include <cmath>
#include <stdexcept>

#include "agd/numeric.hpp"

namespace agd {

void validate_simplex(std::span<const double> weights) {
    if (weights.empty()) {
        throw std::invalid_argument("weight vector must be non-empty");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) {
            throw std::invalid_argument("weights must be nonnegative");
        }
        total += w;
    }
    if (std::fabs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("weights must sum to 1 within 1e-12");
    }
}

ParticleMixture::ParticleMixture(std::vector<double> atoms,
                                 std::vector<double> weights, std::size_t dim)
    : atoms_(std::move(atoms)), weights_(std::move(weights)), dim_(dim) {
    if (dim_ == 0) throw std::invalid_argument("dimension must be >= 1");
    validate_simplex(weights_);
    if (atoms_.size() != weights_.size() * dim_) {
        throw std::invalid_argument("atom buffer size mismatch");
    }
}

ParticleMixture ParticleMixture::uniform(std::vector<double> atoms,
                                         std::size_t dim) {
    if (dim == 0 || atoms.size() % dim != 0 || atoms.empty()) {
        throw std::invalid_argument("atom buffer size mismatch");
    }
    const std::size_t j = atoms.size() / dim;
    std::vector<double> w(j, 1.0 / static_cast<double>(j));
    return ParticleMixture(std::move(atoms), std::move(w), dim);
}

ParticleMixture ParticleMixture::with_weights(
    std::vector<double> weights) const {
    return ParticleMixture(atoms_, std::move(weights), dim_);
}

double kernel_log_density(std::span<const double> theta,
                          std::span<const double> y, GaussianKernel kernel) {
    if (theta.size() != y.size()) {
        throw std::invalid_argument("kernel_log_density: dimension mismatch");
    }
    if (!(kernel.bandwidth > 0.0)) {
        throw std::invalid_argument("kernel bandwidth must be positive");
    }
    // Same expression shape as the batched kernel so the two paths agree
    // bitwise.
    const double h = kernel.bandwidth;
    const double d = static_cast<double>(theta.size());
    const double norm = -0.5 * d * std::log(2.0 * M_PI * h * h);
    const double inv2h2 = 1.0 / (2.0 * h * h);
    double sq = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double diff = y[i] - theta[i];
        sq += diff * diff;
    }
    return -sq * inv2h2 + norm;
}

double log_mixture_density(const ParticleMixture& mix, GaussianKernel kernel,
                           std::span<const double> y) {
    std::vector<double> terms;
    terms.reserve(mix.atom_count());
    bool any = false;
    for (std::size_t j = 0; j < mix.atom_count(); ++j) {
        const double w = mix.weights()[j];
        if (w == 0.0) continue;
        any = true;
        terms.push_back(std::log(w) + kernel_log_density(mix.atom(j), y, kernel));
    }
    if (!any) {
        throw std::invalid_argument("log_mixture_density: all weights zero");
    }
    return log_sum_exp(terms);
}

std::size_t pick_atom(std::span<const double> weights, double u) {
    double cum = 0.0;
    std::size_t last_positive = 0;
    bool seen = false;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        if (weights[j] == 0.0) continue;
        cum += weights[j];
        last_positive = j;
        seen = true;
        if (u <= cum) return j;
    }
    if (!seen) throw std::invalid_argument("pick_atom: all weights zero");
    return last_positive;  // u beyond cumulative rounding tail
}

std::vector<double> sample_mixture(const ParticleMixture& mix,
                                   GaussianKernel kernel, std::size_t m,
                                   Rng& rng) {
    if (m == 0) throw std::invalid_argument("sample count must be >= 1");
    const std::size_t d = mix.dim();
    std::vector<double> out(m * d);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = pick_atom(mix.weights(), rng.uniform01());
        const auto theta = mix.atom(j);
        for (std::size_t c = 0; c < d; ++c) {
            out[i * d + c] = theta[c] + kernel.bandwidth * rng.normal();
        }
    }
    return out;
}

}  // namespace agd
