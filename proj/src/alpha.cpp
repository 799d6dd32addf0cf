#include "agd/alpha.hpp"

#include <cmath>

namespace agd {

namespace {

void require_positive(double u) {
    if (!(u > 0.0)) {
        throw std::domain_error("f_alpha: argument must be positive");
    }
}

}  // namespace

double f_alpha(double u, AlphaParam alpha) {
    require_positive(u);
    if (alpha.at_zero()) {
        return u - 1.0 - std::log(u);
    }
    if (alpha.at_one()) {
        return 1.0 - u + u * std::log(u);
    }
    const double a = alpha.value;
    // u^a - 1 via expm1 keeps precision when a*log(u) is tiny.
    const double num = std::expm1(a * std::log(u)) - a * (u - 1.0);
    return num / (a * (a - 1.0));
}

double f_alpha_prime(double u, AlphaParam alpha) {
    require_positive(u);
    if (alpha.at_one()) {
        return std::log(u);
    }
    const double a = alpha.value;
    return std::expm1((a - 1.0) * std::log(u)) / (a - 1.0);
}

double f_alpha_tilde(double u, AlphaParam alpha) {
    require_positive(u);
    return u * f_alpha(1.0 / u, alpha);
}

}  // namespace agd
