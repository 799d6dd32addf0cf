#pragma once
// The multiplicative simplex update shared by the exact and the stochastic
// descent:
//
//   lambda'_j = lambda_j Gamma(b_j + kappa) / sum_i lambda_i Gamma(b_i + kappa)
//
// computed in log domain (log lambda_j + log Gamma(v_j), log-sum-exp
// normalization) with a final linear renormalization, so huge |b| cannot
// overflow. Zero weights stay zero. Exact and stochastic callers both route
// through this one function, which makes their outputs bit-identical for
// identical gradient vectors.

#include <span>
#include <vector>

#include "agd/transforms.hpp"

namespace agd {

std::vector<double> apply_transform_update(std::span<const double> weights,
                                           std::span<const double> gradient,
                                           const TransformConfig& config,
                                           double eta);

}  // namespace agd
