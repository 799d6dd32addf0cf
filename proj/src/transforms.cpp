#include "agd/transforms.hpp"

#include <cmath>

namespace agd {

namespace {

bool power_with_alpha_one(const TransformConfig& config) {
    return config.family == TransformFamily::Power && config.alpha.at_one();
}

}  // namespace

double log_gamma_eval(double v, const TransformConfig& config, double eta,
                      std::ptrdiff_t atom_index) {
    if (config.family == TransformFamily::Exponential) {
        return -eta * v;
    }
    if (power_with_alpha_one(config)) {
        throw std::invalid_argument("power transform undefined at alpha = 1");
    }
    const double a = config.alpha.value;
    const double s = (a - 1.0) * v + 1.0;
    if (!(s > 0.0)) {
        throw PowerDomainError(v, atom_index);
    }
    return eta / (1.0 - a) * std::log(s);
}

double gamma_eval(double v, const TransformConfig& config, double eta) {
    return std::exp(log_gamma_eval(v, config, eta));
}

double gamma_derivative(double v, const TransformConfig& config, double eta) {
    if (config.family == TransformFamily::Exponential) {
        return -eta * std::exp(-eta * v);
    }
    if (power_with_alpha_one(config)) {
        throw std::invalid_argument("power transform undefined at alpha = 1");
    }
    const double a = config.alpha.value;
    const double s = (a - 1.0) * v + 1.0;
    if (!(s > 0.0)) {
        throw PowerDomainError(v, -1);
    }
    // d/dv s^q = q (a-1) s^(q-1) = -eta s^(q-1), q = eta/(1-a)
    return -eta * std::pow(s, eta / (1.0 - a) - 1.0);
}

double log_gamma_derivative(double v, const TransformConfig& config,
                            double eta) {
    if (config.family == TransformFamily::Exponential) {
        return -eta;
    }
    if (power_with_alpha_one(config)) {
        throw std::invalid_argument("power transform undefined at alpha = 1");
    }
    const double a = config.alpha.value;
    const double s = (a - 1.0) * v + 1.0;
    if (!(s > 0.0)) {
        throw PowerDomainError(v, -1);
    }
    return -eta / s;
}

double a2_expression(double v, const TransformConfig& config, double eta) {
    const double a = config.alpha.value;
    return ((a - 1.0) * (v - config.kappa) + 1.0) *
               log_gamma_derivative(v, config, eta) +
           1.0;
}

ValidationReport validate_monotonicity(const TransformConfig& config) {
    const double eta = config.eta0;
    if (!(eta > 0.0)) {
        return {Admissibility::Violation, "eta0 must be positive"};
    }
    if (config.family == TransformFamily::Exponential) {
        if (config.alpha.at_one()) {
            if (eta <= 1.0) return {Admissibility::Ok, ""};
            return {Admissibility::Violation,
                    "exponential transform at alpha=1 needs eta in (0,1]"};
        }
        return {Admissibility::Conditional,
                "exponential transform with alpha!=1: decrease condition "
                "depends on the gradient range; check the convergence tier "
                "with a gradient bound"};
    }
    // Power family
    if (config.alpha.at_one()) {
        return {Admissibility::Violation,
                "power transform undefined at alpha = 1"};
    }
    if (eta > 1.0) {
        return {Admissibility::Violation,
                "power transform needs eta in (0,1]"};
    }
    const double ak = (config.alpha.value - 1.0) * config.kappa;
    if (ak < 0.0) {
        return {Admissibility::Violation,
                "power transform needs (alpha-1)*kappa >= 0, got " +
                    std::to_string(ak)};
    }
    return {Admissibility::Ok, ""};
}

ValidationReport validate_convergence(const TransformConfig& config,
                                      double b_infty) {
    const double eta = config.eta0;
    if (!(eta > 0.0)) {
        return {Admissibility::Violation, "eta0 must be positive"};
    }
    if (config.family == TransformFamily::Exponential) {
        if (config.alpha.at_one()) {
            if (eta < 1.0) return {Admissibility::Ok, ""};
            return {Admissibility::Violation,
                    "exponential transform at alpha=1 needs eta in (0,1)"};
        }
        if (!std::isfinite(b_infty) || b_infty < 0.0) {
            return {Admissibility::Violation,
                    "exponential transform with alpha!=1 needs a finite "
                    "gradient bound"};
        }
        const double cap =
            1.0 / (std::fabs(config.alpha.value - 1.0) * b_infty + 1.0);
        if (eta < cap) return {Admissibility::Ok, ""};
        return {Admissibility::Violation,
                "exponential transform with alpha!=1 needs eta < " +
                    std::to_string(cap)};
    }
    if (config.alpha.at_one()) {
        return {Admissibility::Violation,
                "power transform undefined at alpha = 1"};
    }
    if (eta > 1.0) {
        return {Admissibility::Violation,
                "power transform needs eta in (0,1]"};
    }
    if (config.alpha.value > 1.0) {
        if (config.kappa > 0.0) return {Admissibility::Ok, ""};
        return {Admissibility::Violation,
                "power transform with alpha>1 needs kappa > 0"};
    }
    if (config.kappa <= 0.0) return {Admissibility::Ok, ""};
    return {Admissibility::Violation,
            "power transform with alpha<1 needs kappa <= 0"};
}

double learning_rate(const TransformConfig& config, int n, int horizon) {
    if (n < 1) {
        throw std::invalid_argument("learning_rate: step index must be >= 1");
    }
    switch (config.rate_policy) {
        case RatePolicy::Constant:
            return config.eta0;
        case RatePolicy::InverseSqrtN:
            return config.eta0 / std::sqrt(static_cast<double>(n));
        case RatePolicy::InverseSqrtHorizon:
            if (horizon < 1 || n > horizon) {
                throw std::invalid_argument(
                    "learning_rate: horizon must satisfy 1 <= n <= horizon");
            }
            return config.eta0 / std::sqrt(static_cast<double>(horizon));
    }
    throw std::logic_error("unreachable");
}

}  // namespace agd
