#pragma once
// Adaptive importance sampling baseline sharing the exploration machinery.
//
// At t = 0 atoms come from the initial distribution q_0; afterwards the
// proposal q_{t+1} is the previous step's weighted mixture at bandwidth h_t,
// and new atoms are drawn from it (resample + perturb, the same operation
// the descent's exploration performs). Weights are normalized importance
// ratios
//
//   lambda_j propto p(theta_j) / q_t(theta_j)
//
// computed from log ratios with max subtraction. The trace schema matches
// run_outer row for row so the two methods can be compared side by side.

#include "agd/explore.hpp"

namespace agd {

// Softmax of (log target - log proposal); -inf ratios get weight zero;
// throws if every ratio is -inf.
std::vector<double> ais_weights(std::span<const double> log_target_at_atoms,
                                std::span<const double> log_proposal_at_atoms);

OuterResult run_ais(const TargetModel& target,
                    const ExplorationSchedule& schedule,
                    const InitialDistribution& initial, Rng rng,
                    const OuterOptions& options = {},
                    AlphaParam bound_alpha = {0.5});

}  // namespace agd
