#pragma once
// Evidence bounds computable from a weight vector and its gradient vector.
//
// With mu(b) = sum_j lambda_j b_j,
//
//   L_1 = -mu(b)                                   (ELBO, alpha = 1)
//   L_a = 1/(1-a) log((a-1) mu(b) + 1)             (Renyi bound, alpha != 1)
//
// Both lower-bound the log normalizer of the target. The Renyi log argument
// can hit zero or below when the bound is infinite/undefined (the failure
// mode of orders > 1 on mismatched supports); that case is reported as
// nullopt instead of a NaN.

#include <optional>
#include <span>

#include "agd/alpha.hpp"

namespace agd {

double weighted_mean(std::span<const double> weights,
                     std::span<const double> values);

std::optional<double> elbo_renyi_bound(std::span<const double> weights,
                                       std::span<const double> gradient,
                                       AlphaParam alpha);

}  // namespace agd
