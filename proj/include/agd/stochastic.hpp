#pragma once
// Stochastic descent over the mixture weights at a fixed atom set.
//
// One step: draw Y_1..Y_M from the smoothed mixture, estimate the gradient
// at every atom, apply the multiplicative transform update. The estimator
// uses responsibilities r_jm = k(theta_j, Y_m) / mu k(Y_m) and importance
// ratios between target and mixture:
//
//   alpha = 1:   b_j = (1/M) sum_m r_jm log(mu k(Y_m) / p(Y_m))
//   otherwise:   b_j = (S_j - 1) / (alpha - 1),
//                S_j = (1/M) sum_m r_jm (p(Y_m) / mu k(Y_m))^(1-alpha)
//
// The second form rests on the kernel being a transition density
// (its mass integrates to one), which pins the constant part of
// f_alpha'(u) = (u^(alpha-1) - 1)/(alpha-1) exactly instead of re-estimating
// it from the same samples; with that choice the power update at
// (alpha=0, eta=1, kappa=0) coincides per-coordinate with the classical
// importance-weighted mixture update. All ratios are formed in log domain
// (log-sum-exp over atoms, expm1 for S_j - 1).
//
// A target evaluating to zero mass at a sample makes the estimate infinite
// for alpha >= 1; such entries are flagged rather than silently clamped.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "agd/alpha.hpp"
#include "agd/mixture.hpp"
#include "agd/targets.hpp"
#include "agd/trace.hpp"
#include "agd/transforms.hpp"

namespace agd {

struct GradientEstimate {
    std::vector<double> values;       // NaN where flagged
    std::vector<bool> undefined;      // per-atom flag
    std::size_t sample_count{0};

    bool any_undefined() const {
        for (bool f : undefined) {
            if (f) return true;
        }
        return false;
    }
};

class FlaggedGradientError : public std::runtime_error {
public:
    explicit FlaggedGradientError(int step)
        : std::runtime_error("non-finite gradient estimate at inner step " +
                             std::to_string(step)),
          inner_step(step) {}
    int inner_step;
};

// samples: row-major M x dim, drawn from the smoothed mixture.
GradientEstimate estimate_gradient(const ParticleMixture& mix,
                                   GaussianKernel kernel,
                                   const TargetModel& target,
                                   std::span<const double> samples,
                                   std::size_t sample_count, AlphaParam alpha);

// Serial reference of the same computation.
GradientEstimate estimate_gradient_serial(const ParticleMixture& mix,
                                          GaussianKernel kernel,
                                          const TargetModel& target,
                                          std::span<const double> samples,
                                          std::size_t sample_count,
                                          AlphaParam alpha);

// Transform update on an estimate; refuses flagged estimates.
std::vector<double> update_weights(std::span<const double> weights,
                                   const GradientEstimate& estimate,
                                   const TransformConfig& config, double eta);

enum class FlagPolicy { Abort, SkipStep };

struct InnerResult {
    std::vector<double> weights;
    DescentTrace trace;
    int completed_steps{0};
};

// N inner steps at fixed atoms; M fresh samples per step from the current
// mixture. Per step the trace records eta_n, the weighted gradient mean,
// min/max gradient entries, and the evidence bound (NaN when undefined).
InnerResult run_inner(const ParticleMixture& mix, GaussianKernel kernel,
                      const TargetModel& target, int steps,
                      std::size_t samples_per_step,
                      const TransformConfig& config, Rng& rng,
                      FlagPolicy policy = FlagPolicy::Abort);

// Step-size-weighted average of iterates: sum_n (eta_n / sum eta) lambda_n.
std::vector<double> averaged_iterate(
    const std::vector<std::vector<double>>& iterates,
    const std::vector<double>& etas);

}  // namespace agd
