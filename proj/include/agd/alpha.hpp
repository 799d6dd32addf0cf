#pragma once
// The convex function family behind the alpha-divergence:
//
//   f_0(u) = u - 1 - log u
//   f_1(u) = 1 - u + u log u
//   f_a(u) = [u^a - 1 - a(u - 1)] / (a(a-1))      a not in {0, 1}
//
// together with its derivative
//
//   f_1'(u) = log u,    f_a'(u) = (u^(a-1) - 1) / (a - 1).
//
// The divergence of q against (possibly unnormalized) p is
// integral of f_a(q/p) p dnu; f_a >= 0 with equality iff u = 1.
//
// Orders within 1e-12 of 0 or 1 dispatch to the limit formulas, which avoids
// the catastrophic cancellation of the generic expression near those points.

#include <stdexcept>

namespace agd {

struct AlphaParam {
    double value{0.0};

    static constexpr double kLimitBand = 1e-12;

    bool at_zero() const { return value > -kLimitBand && value < kLimitBand; }
    bool at_one() const {
        return value > 1.0 - kLimitBand && value < 1.0 + kLimitBand;
    }
};

// f_alpha(u); throws std::domain_error for u <= 0.
double f_alpha(double u, AlphaParam alpha);

// d/du f_alpha(u); throws std::domain_error for u <= 0.
double f_alpha_prime(double u, AlphaParam alpha);

// f~_alpha(u) = u * f_alpha(1/u), the transform appearing in the lower bound
// Psi >= f~_alpha(total target mass).
double f_alpha_tilde(double u, AlphaParam alpha);

}  // namespace agd
