#include "agd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "agd/divergence.hpp"
#include "agd/mixture.hpp"

namespace agd {

double tv_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("tv_distance: size mismatch");
    }
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        s += std::fabs(a[j] - b[j]);
    }
    return 0.5 * s;
}

double gradient_variance(std::span<const double> weights,
                         std::span<const double> gradient) {
    validate_simplex(weights);
    if (weights.size() != gradient.size()) {
        throw std::invalid_argument("gradient_variance: size mismatch");
    }
    double m1 = 0.0;
    double m2 = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        m1 += weights[j] * gradient[j];
        m2 += weights[j] * gradient[j] * gradient[j];
    }
    return std::max(0.0, m2 - m1 * m1);
}

namespace {

double gamma_second_derivative(double v, const TransformConfig& config,
                               double eta) {
    if (config.family == TransformFamily::Exponential) {
        return eta * eta * std::exp(-eta * v);
    }
    const double a = config.alpha.value;
    const double s = (a - 1.0) * v + 1.0;
    const double q = eta / (1.0 - a);
    // Gamma'' = -eta (q-1)(a-1) s^(q-2)
    return -eta * (q - 1.0) * (a - 1.0) * std::pow(s, q - 2.0);
}

}  // namespace

MonotonicityConstants monotonicity_constants(const TransformConfig& config,
                                             double b_lo, double b_hi,
                                             double eta) {
    if (eta <= 0.0) eta = config.eta0;
    if (!(b_lo <= b_hi)) {
        throw std::invalid_argument("monotonicity_constants: empty range");
    }
    const double v_lo = b_lo + config.kappa;
    const double v_hi = b_hi + config.kappa;
    if (config.family == TransformFamily::Power) {
        const double a = config.alpha.value;
        if (!((a - 1.0) * v_lo + 1.0 > 0.0) ||
            !((a - 1.0) * v_hi + 1.0 > 0.0)) {
            throw PowerDomainError((a - 1.0) * v_lo + 1.0 > 0.0 ? v_hi : v_lo,
                                   -1);
        }
    }
    constexpr int kGridPoints = 10000;
    double inf_a2 = std::numeric_limits<double>::infinity();
    double inf_neg_gp = std::numeric_limits<double>::infinity();
    double inf_gamma = std::numeric_limits<double>::infinity();
    double inf_neg_log_gp = std::numeric_limits<double>::infinity();
    double sup_gpp = 0.0;
    for (int i = 0; i < kGridPoints; ++i) {
        const double t = static_cast<double>(i) / (kGridPoints - 1);
        const double v = v_lo + t * (v_hi - v_lo);
        inf_a2 = std::min(inf_a2, a2_expression(v, config, eta));
        inf_neg_gp = std::min(inf_neg_gp, -gamma_derivative(v, config, eta));
        inf_gamma = std::min(inf_gamma, gamma_eval(v, config, eta));
        inf_neg_log_gp =
            std::min(inf_neg_log_gp, -log_gamma_derivative(v, config, eta));
        sup_gpp =
            std::max(sup_gpp, std::fabs(gamma_second_derivative(v, config, eta)));
    }
    MonotonicityConstants out{};
    out.c = inf_a2 * inf_neg_gp;
    out.smoothness = sup_gpp;
    out.l_alpha_1 = 1.0 / inf_neg_log_gp;
    out.l_alpha_2 = 1.0 / inf_gamma;
    return out;
}

void padded_range(const TransformConfig& config, double& lo, double& hi) {
    if (!(lo <= hi)) std::swap(lo, hi);
    double width = hi - lo;
    if (width <= 0.0) width = std::max(1e-6, 1e-6 * std::fabs(lo));
    lo -= 0.1 * width;
    hi += 0.1 * width;
    if (config.family == TransformFamily::Power) {
        // Clip back inside the domain (a-1) v + 1 > 0, v = b + kappa.
        const double a = config.alpha.value;
        const double boundary = -1.0 / (a - 1.0) - config.kappa;  // b at s = 0
        const double margin = 1e-9 * (1.0 + std::fabs(boundary));
        if (a > 1.0) {
            lo = std::max(lo, boundary + margin);
        } else {
            hi = std::min(hi, boundary - margin);
        }
        if (lo > hi) lo = hi;
    }
}

double first_variation_check(const DiscreteProblem& problem,
                             std::span<const double> weights, AlphaParam alpha,
                             double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        throw std::invalid_argument("first_variation_check: bad epsilon");
    }
    const auto b = exact_gradient(problem, weights, alpha);
    const double mb = weighted_mean(weights, b);
    const double psi0 = psi_exact(problem, weights, alpha);
    const std::size_t j_count = problem.atom_count();

    double scale = 0.0;
    for (std::size_t j = 0; j < j_count; ++j) {
        scale = std::max(scale, std::fabs(b[j] - mb));
    }
    if (scale == 0.0) scale = 1.0;

    double worst = 0.0;
    std::vector<double> shifted(weights.begin(), weights.end());
    for (std::size_t j = 0; j < j_count; ++j) {
        for (std::size_t i = 0; i < j_count; ++i) {
            shifted[i] = (1.0 - epsilon) * weights[i];
        }
        shifted[j] += epsilon;
        // renormalize exactly onto the simplex to absorb rounding
        double total = 0.0;
        for (double w : shifted) total += w;
        for (double& w : shifted) w /= total;
        const double psi1 = psi_exact(problem, shifted, alpha);
        const double fd = (psi1 - psi0) / epsilon;
        const double direct = b[j] - mb;
        worst = std::max(worst, std::fabs(fd - direct) / scale);
    }
    return worst;
}

}  // namespace agd
