#pragma once
// Cross-cutting numerical checks.
//
// monotonicity_constants evaluates, over an interval of gradient values,
// the constants controlling the per-step decrease
//
//   c       = inf_v { [(a-1)(v-kappa)+1] (log Gamma)'(v) + 1 } * inf_v -Gamma'(v)
//   L_{a,1} = 1 / inf_v (-log Gamma)'(v)
//   L_{a,2} = 1 / inf_v Gamma(v)
//   L       = sup_v |Gamma''(v)|
//
// with v ranging over (b range) + kappa on a 10^4-point uniform grid and all
// derivatives evaluated analytically. The interval stands in for the
// transform's domain; callers pad the empirical gradient range by 10% (the
// true domain needs a global gradient bound that is unavailable in general).
//
// The decrease bound that c feeds is
//   Psi(lambda) - Psi(one step) >= (c/2) Var_lambda(b).

#include <span>

#include "agd/alpha.hpp"
#include "agd/discrete.hpp"
#include "agd/transforms.hpp"

namespace agd {

// Total variation between weight vectors on shared atoms: 0.5 * sum |a - b|.
double tv_distance(std::span<const double> a, std::span<const double> b);

// Var_lambda(b) = sum lambda_j b_j^2 - (sum lambda_j b_j)^2, clamped at 0.
double gradient_variance(std::span<const double> weights,
                         std::span<const double> gradient);

struct MonotonicityConstants {
    double c;
    double smoothness;  // L
    double l_alpha_1;
    double l_alpha_2;
};

// b_lo/b_hi bound the gradient values; the scan runs over [b_lo, b_hi] +
// kappa. Throws if that interval leaves the transform's domain. eta defaults
// to the config's base step size.
MonotonicityConstants monotonicity_constants(const TransformConfig& config,
                                             double b_lo, double b_hi,
                                             double eta = -1.0);

// Pads [lo, hi] by 10% of its width (a tiny floor for degenerate ranges) and
// clips the result into the transform's domain.
void padded_range(const TransformConfig& config, double& lo, double& hi);

// Compares the one-sided difference quotient of Psi along the segment
// toward each vertex e_j with the first-variation value b_j - mu(b).
// Returns the largest discrepancy, measured relative to the size of the
// largest first-variation entry.
double first_variation_check(const DiscreteProblem& problem,
                             std::span<const double> weights, AlphaParam alpha,
                             double epsilon);

}  // namespace agd
