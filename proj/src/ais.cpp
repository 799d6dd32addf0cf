#include "agd/ais.hpp"

#include <cmath>
#include <stdexcept>

#include "agd/divergence.hpp"
#include "agd/numeric.hpp"

namespace agd {

std::vector<double> ais_weights(std::span<const double> log_target_at_atoms,
                                std::span<const double> log_proposal_at_atoms) {
    if (log_target_at_atoms.size() != log_proposal_at_atoms.size() ||
        log_target_at_atoms.empty()) {
        throw std::invalid_argument("ais_weights: size mismatch");
    }
    const std::size_t j_count = log_target_at_atoms.size();
    std::vector<double> log_ratio(j_count);
    double best = neg_inf;
    for (std::size_t j = 0; j < j_count; ++j) {
        if (!std::isfinite(log_proposal_at_atoms[j])) {
            throw std::invalid_argument(
                "ais_weights: proposal density must be finite at atoms");
        }
        log_ratio[j] = log_target_at_atoms[j] - log_proposal_at_atoms[j];
        if (log_ratio[j] > best) best = log_ratio[j];
    }
    if (best == neg_inf) {
        throw std::runtime_error(
            "ais_weights: degenerate weights (target mass zero at every atom)");
    }
    std::vector<double> w(j_count, 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < j_count; ++j) {
        if (log_ratio[j] == neg_inf) continue;
        w[j] = std::exp(log_ratio[j] - best);
        total += w[j];
    }
    for (double& v : w) v /= total;
    return w;
}

namespace {

double metric_bound_ais(const ParticleMixture& mix, GaussianKernel kernel,
                        const TargetModel& target, std::size_t m_samples,
                        AlphaParam alpha, Rng& rng) {
    const auto samples = sample_mixture(mix, kernel, m_samples, rng);
    const auto est =
        estimate_gradient(mix, kernel, target, samples, m_samples, alpha);
    if (est.any_undefined()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const auto bound = elbo_renyi_bound(mix.weights(), est.values, alpha);
    return bound ? *bound : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

OuterResult run_ais(const TargetModel& target,
                    const ExplorationSchedule& schedule,
                    const InitialDistribution& initial, Rng rng,
                    const OuterOptions& options, AlphaParam bound_alpha) {
    schedule.validate();
    if (initial.dim() != target.dim()) {
        throw std::invalid_argument("run_ais: dimension mismatch");
    }
    const std::size_t d = target.dim();
    OuterResult result;

    Rng init_rng = rng.child(seed_tag::init_draw);
    std::vector<double> atoms = initial.draw(init_rng, schedule.particles[0]);

    // Proposal state from the previous step: empty at t = 0 (prior proposal).
    std::optional<ParticleMixture> prev_mix;
    double prev_h = 0.0;

    const int t_count = schedule.outer_steps;
    for (int t = 0; t <= t_count; ++t) {
        Rng outer_rng = rng.child(seed_tag::outer, static_cast<std::uint64_t>(t));
        if (options.on_outer_step) options.on_outer_step(t, outer_rng);

        const std::size_t j_t = schedule.particles[static_cast<std::size_t>(t)];
        const std::size_t m_t = schedule.samples[static_cast<std::size_t>(t)];
        const double h_t = bandwidth(j_t, d, schedule.bandwidth_scale);
        const GaussianKernel kernel{h_t};
        const std::size_t m_metric =
            options.metric_samples > 0 ? options.metric_samples : m_t;

        ParticleMixture uniform_mix = ParticleMixture::uniform(atoms, d);
        {
            Rng metric_rng = outer_rng.child(seed_tag::metric, 0);
            result.trace.add(t, 0, "bound_pre",
                             metric_bound_ais(uniform_mix, kernel, target,
                                              m_metric, bound_alpha,
                                              metric_rng),
                             metric_rng.seed());
        }
        if (options.loglik_alpha) {
            Rng metric_rng = outer_rng.child(seed_tag::metric, 2);
            result.trace.add(t, 0, "loglik_pre",
                             metric_bound_ais(uniform_mix, kernel, target,
                                              m_metric, *options.loglik_alpha,
                                              metric_rng),
                             metric_rng.seed());
        }

        // Importance weights against the proposal the atoms were drawn from.
        std::vector<double> log_p(j_t);
        std::vector<double> log_q(j_t);
        for (std::size_t j = 0; j < j_t; ++j) {
            const std::span<const double> theta{atoms.data() + j * d, d};
            log_p[j] = target.log_density_unnormalized(theta);
            log_q[j] = prev_mix
                           ? log_mixture_density(*prev_mix,
                                                 GaussianKernel{prev_h}, theta)
                           : initial.log_density(theta);
        }
        std::vector<double> weights = ais_weights(log_p, log_q);
        ParticleMixture mix(atoms, weights, d);

        {
            Rng metric_rng = outer_rng.child(seed_tag::metric, 1);
            result.trace.add(t, schedule.inner_steps, "bound_post",
                             metric_bound_ais(mix, kernel, target, m_metric,
                                              bound_alpha, metric_rng),
                             metric_rng.seed());
        }
        if (options.loglik_alpha) {
            Rng metric_rng = outer_rng.child(seed_tag::metric, 3);
            result.trace.add(t, schedule.inner_steps, "loglik_post",
                             metric_bound_ais(mix, kernel, target, m_metric,
                                              *options.loglik_alpha,
                                              metric_rng),
                             metric_rng.seed());
        }
        if (options.extra_metrics) {
            Rng metric_rng = outer_rng.child(seed_tag::metric, 4);
            options.extra_metrics(t, mix, kernel, metric_rng, result.trace);
        }
        result.last_outer = t;

        if (t == t_count) {
            result.mixture = std::move(mix);
            break;
        }
        prev_mix = mix;
        prev_h = h_t;
        const std::size_t j_next =
            schedule.particles[static_cast<std::size_t>(t) + 1];
        Rng resample_rng = outer_rng.child(seed_tag::resample);
        atoms = resample(mix, j_next, resample_rng);
        Rng perturb_rng = outer_rng.child(seed_tag::perturb);
        perturb(atoms, d, h_t, perturb_rng);
    }
    result.completed = true;
    return result;
}

}  // namespace agd
