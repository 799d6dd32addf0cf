#pragma once
// Outer loop: alternate weight optimization at a fixed atom set
// (exploitation) with resampling and kernel perturbation of the atoms
// (exploration).
//
// Outer step t holds J_t atoms smoothed at bandwidth
//   h_t = h0 * J_t^(-1/(4+d)),
// runs N inner descent steps with M_t samples each from uniform initial
// weights, records metrics, then (except after the last step) draws J_{t+1}
// atoms multinomially from the optimized weights and perturbs each with
// h_t times a standard normal vector. Weights re-enter the next
// exploitation uniform; carrying them over is available behind a flag.
//
// Seed tree: the run rng spawns one child per outer step, which in turn
// feeds the init/resample/perturb/inner/metric streams, so any prefix of
// the run is reproducible independently of scheduling.

#include <functional>
#include <optional>

#include "agd/mixture.hpp"
#include "agd/stochastic.hpp"
#include "agd/targets.hpp"
#include "agd/trace.hpp"

namespace agd {

// Initial atom distribution; density evaluation is what importance-weighting
// baselines use at t = 0.
class InitialDistribution {
public:
    virtual ~InitialDistribution() = default;
    virtual std::size_t dim() const = 0;
    virtual std::vector<double> draw(Rng& rng, std::size_t count) const = 0;
    virtual double log_density(std::span<const double> y) const = 0;
};

// Centered isotropic Gaussian initial sampler.
class GaussianInitial : public InitialDistribution {
public:
    GaussianInitial(std::size_t dim, double variance);
    std::size_t dim() const override { return dim_; }
    std::vector<double> draw(Rng& rng, std::size_t count) const override;
    double log_density(std::span<const double> y) const override;

private:
    std::size_t dim_;
    double variance_;
};

// Draws (w, beta) from the Gamma-normal prior of the logistic model.
class BlrPriorInitial : public InitialDistribution {
public:
    BlrPriorInitial(std::size_t feature_count, double shape, double rate);
    std::size_t dim() const override { return feature_count_ + 1; }
    std::vector<double> draw(Rng& rng, std::size_t count) const override;
    double log_density(std::span<const double> y) const override;

private:
    std::size_t feature_count_;
    double shape_;
    double rate_;
};

struct ExplorationSchedule {
    int outer_steps{1};                // T
    std::vector<std::size_t> particles;  // J_t, length T+1
    std::vector<std::size_t> samples;    // M_t, length T+1
    int inner_steps{1};                // N
    double bandwidth_scale{1.0};       // h0

    static ExplorationSchedule constant(int outer_steps, std::size_t particles,
                                        std::size_t samples, int inner_steps,
                                        double bandwidth_scale = 1.0);
    // J_{t+1} = M_{t+1} = J_t + 1 growth from a common start.
    static ExplorationSchedule growing(int outer_steps, std::size_t start,
                                       int inner_steps,
                                       double bandwidth_scale = 1.0);
    void validate() const;
};

// h0 * J^(-1/(4+d)).
double bandwidth(std::size_t particle_count, std::size_t dim, double h0);

// J_next atoms drawn i.i.d. from the mixture weights.
std::vector<double> resample(const ParticleMixture& mix, std::size_t j_next,
                             Rng& rng);

// Adds h * standard normal to every coordinate, in place.
void perturb(std::vector<double>& atoms, std::size_t dim, double h, Rng& rng);

struct OuterOptions {
    std::size_t metric_samples{0};  // 0: reuse M_t for the metric estimate
    FlagPolicy flag_policy{FlagPolicy::Abort};
    bool carry_weights{false};
    // Called at the start of every outer step (minibatch refresh etc.).
    std::function<void(int, Rng&)> on_outer_step;
    // Extra evidence metric: when set, rows loglik_pre/loglik_post record the
    // bound at this order from a separate metric stream (order 0 gives the
    // importance-sampling log-evidence estimate).
    std::optional<AlphaParam> loglik_alpha;
    // Called after the bound metrics of each outer step with the optimized
    // mixture of that step; free to append rows (accuracy etc.).
    std::function<void(int, const ParticleMixture&, GaussianKernel, Rng&,
                       DescentTrace&)>
        extra_metrics;
};

struct OuterResult {
    std::optional<ParticleMixture> mixture;
    DescentTrace trace;
    bool completed{false};
    int last_outer{-1};
};

// Metric rows per outer step t: bound_pre (uniform weights), bound_post
// (optimized weights), plus the inner-loop rows re-tagged with t.
OuterResult run_outer(const TargetModel& target,
                      const ExplorationSchedule& schedule,
                      const TransformConfig& config,
                      const InitialDistribution& initial, Rng rng,
                      const OuterOptions& options = {});

}  // namespace agd
