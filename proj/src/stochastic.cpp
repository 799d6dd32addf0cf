#include "agd/stochastic.hpp"

#include <cmath>

#include "agd/divergence.hpp"
#include "agd/kernels.hpp"
#include "agd/numeric.hpp"
#include "agd/update.hpp"

namespace agd {

namespace {

GradientEstimate estimate_impl(const ParticleMixture& mix,
                               GaussianKernel kernel, const TargetModel& target,
                               std::span<const double> samples,
                               std::size_t sample_count, AlphaParam alpha,
                               bool parallel) {
    if (sample_count == 0) {
        throw std::invalid_argument("estimate_gradient: no samples");
    }
    if (samples.size() != sample_count * mix.dim()) {
        throw std::invalid_argument("estimate_gradient: sample buffer mismatch");
    }
    if (target.dim() != mix.dim()) {
        throw std::invalid_argument("estimate_gradient: target dim mismatch");
    }
    const std::size_t j_count = mix.atom_count();
    const std::size_t m = sample_count;

    std::vector<double> logk;
    if (parallel) {
        kernel_log_matrix_parallel(mix, kernel, samples, m, logk);
    } else {
        kernel_log_matrix_serial(mix, kernel, samples, m, logk);
    }
    const auto logw = log_weights_of(mix.weights());
    std::vector<double> log_mix;
    if (parallel) {
        log_mixture_from_matrix_parallel(logw, logk, m, log_mix);
    } else {
        log_mixture_from_matrix_serial(logw, logk, m, log_mix);
    }

    std::vector<double> log_p(m);
    auto eval_target = [&](std::size_t i) {
        log_p[i] = target.log_density_unnormalized(
            samples.subspan(i * mix.dim(), mix.dim()));
    };
    if (parallel) {
        parallel_for(m, eval_target);
    } else {
        serial_for(m, eval_target);
    }

    GradientEstimate est;
    est.values.assign(j_count, 0.0);
    est.undefined.assign(j_count, false);
    est.sample_count = m;

    const double log_m = std::log(static_cast<double>(m));
    auto fill_atom = [&](std::size_t j) {
        if (alpha.at_one()) {
            // (1/M) sum r_jm log(mu k / p); a zero-mass sample sends the log
            // ratio to +inf.
            double acc = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double log_r = logk[j * m + i] - log_mix[i];
                const double log_ratio = log_mix[i] - log_p[i];
                acc += std::exp(log_r) * log_ratio;
            }
            const double v = acc / static_cast<double>(m);
            if (std::isfinite(v)) {
                est.values[j] = v;
            } else {
                est.values[j] = std::numeric_limits<double>::quiet_NaN();
                est.undefined[j] = true;
            }
            return;
        }
        const double a = alpha.value;
        // log S_j = LSE_m[ log r_jm + (1-a)(log p - log mu k) ] - log M
        double best = neg_inf;
        std::vector<double> terms(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double t = logk[j * m + i] - log_mix[i] +
                             (1.0 - a) * (log_p[i] - log_mix[i]);
            terms[i] = t;
            if (t > best) best = t;
        }
        double v;
        if (best == neg_inf) {
            v = -1.0 / (a - 1.0);  // S_j = 0: every sample outside support
        } else if (std::isinf(best)) {
            v = std::numeric_limits<double>::infinity();
        } else {
            double s = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                if (terms[i] == neg_inf) continue;
                s += std::exp(terms[i] - best);
            }
            const double log_s = best + std::log(s) - log_m;
            v = std::expm1(log_s) / (a - 1.0);
        }
        if (std::isfinite(v)) {
            est.values[j] = v;
        } else {
            est.values[j] = std::numeric_limits<double>::quiet_NaN();
            est.undefined[j] = true;
        }
    };
    if (parallel) {
        parallel_for(j_count, fill_atom);
    } else {
        serial_for(j_count, fill_atom);
    }
    return est;
}

}  // namespace

GradientEstimate estimate_gradient(const ParticleMixture& mix,
                                   GaussianKernel kernel,
                                   const TargetModel& target,
                                   std::span<const double> samples,
                                   std::size_t sample_count, AlphaParam alpha) {
    return estimate_impl(mix, kernel, target, samples, sample_count, alpha,
                         true);
}

GradientEstimate estimate_gradient_serial(const ParticleMixture& mix,
                                          GaussianKernel kernel,
                                          const TargetModel& target,
                                          std::span<const double> samples,
                                          std::size_t sample_count,
                                          AlphaParam alpha) {
    return estimate_impl(mix, kernel, target, samples, sample_count, alpha,
                         false);
}

std::vector<double> update_weights(std::span<const double> weights,
                                   const GradientEstimate& estimate,
                                   const TransformConfig& config, double eta) {
    if (estimate.any_undefined()) {
        throw std::invalid_argument(
            "update_weights: estimate carries flagged entries");
    }
    return apply_transform_update(weights, estimate.values, config, eta);
}

InnerResult run_inner(const ParticleMixture& mix, GaussianKernel kernel,
                      const TargetModel& target, int steps,
                      std::size_t samples_per_step,
                      const TransformConfig& config, Rng& rng,
                      FlagPolicy policy) {
    InnerResult result;
    result.weights = mix.weights();
    ParticleMixture current = mix;
    for (int n = 1; n <= steps; ++n) {
        Rng step_rng = rng.child(seed_tag::inner, static_cast<std::uint64_t>(n));
        const double eta = learning_rate(config, n, steps);
        const auto samples =
            sample_mixture(current, kernel, samples_per_step, step_rng);
        const auto est = estimate_gradient(current, kernel, target, samples,
                                           samples_per_step, config.alpha);
        result.trace.add(0, n, "eta", eta, step_rng.seed());
        if (est.any_undefined()) {
            result.trace.add(0, n, "flagged", 1.0, step_rng.seed());
            if (policy == FlagPolicy::Abort) {
                throw FlaggedGradientError(n);
            }
            continue;  // skip this step, weights unchanged
        }
        double lo = est.values[0];
        double hi = est.values[0];
        for (double v : est.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const double mb = weighted_mean(result.weights, est.values);
        const auto bound =
            elbo_renyi_bound(result.weights, est.values, config.alpha);
        result.trace.add(0, n, "gradient_mean", mb, step_rng.seed());
        result.trace.add(0, n, "gradient_min", lo, step_rng.seed());
        result.trace.add(0, n, "gradient_max", hi, step_rng.seed());
        result.trace.add(
            0, n, "bound",
            bound ? *bound : std::numeric_limits<double>::quiet_NaN(),
            step_rng.seed());
        result.weights = update_weights(result.weights, est, config, eta);
        current = current.with_weights(result.weights);
        result.completed_steps = n;
    }
    return result;
}

std::vector<double> averaged_iterate(
    const std::vector<std::vector<double>>& iterates,
    const std::vector<double>& etas) {
    if (iterates.empty() || iterates.size() != etas.size()) {
        throw std::invalid_argument("averaged_iterate: bad inputs");
    }
    double total = 0.0;
    for (double e : etas) total += e;
    if (!(total > 0.0)) {
        throw std::invalid_argument("averaged_iterate: step sizes must be > 0");
    }
    std::vector<double> out(iterates.front().size(), 0.0);
    for (std::size_t n = 0; n < iterates.size(); ++n) {
        const double w = etas[n] / total;
        if (iterates[n].size() != out.size()) {
            throw std::invalid_argument("averaged_iterate: ragged iterates");
        }
        for (std::size_t j = 0; j < out.size(); ++j) {
            out[j] += w * iterates[n][j];
        }
    }
    return out;
}

}  // namespace agd
