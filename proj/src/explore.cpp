#include "agd/explore.hpp"

#include <cmath>
#include <stdexcept>

#include "agd/divergence.hpp"

namespace agd {

GaussianInitial::GaussianInitial(std::size_t dim, double variance)
    : dim_(dim), variance_(variance) {
    if (dim_ == 0 || !(variance_ > 0.0)) {
        throw std::invalid_argument("GaussianInitial: bad parameters");
    }
}

std::vector<double> GaussianInitial::draw(Rng& rng, std::size_t count) const {
    std::vector<double> out(count * dim_);
    const double sd = std::sqrt(variance_);
    for (double& v : out) v = sd * rng.normal();
    return out;
}

double GaussianInitial::log_density(std::span<const double> y) const {
    double sq = 0.0;
    for (double v : y) sq += v * v;
    const double d = static_cast<double>(dim_);
    return -sq / (2.0 * variance_) -
           0.5 * d * std::log(2.0 * M_PI * variance_);
}

BlrPriorInitial::BlrPriorInitial(std::size_t feature_count, double shape,
                                 double rate)
    : feature_count_(feature_count), shape_(shape), rate_(rate) {
    if (feature_count_ == 0 || !(shape_ > 0.0) || !(rate_ > 0.0)) {
        throw std::invalid_argument("BlrPriorInitial: bad parameters");
    }
}

std::vector<double> BlrPriorInitial::draw(Rng& rng, std::size_t count) const {
    const std::size_t d = feature_count_ + 1;
    std::vector<double> out(count * d);
    for (std::size_t n = 0; n < count; ++n) {
        const double beta = rng.gamma(shape_, rate_);
        const double sd = 1.0 / std::sqrt(beta);
        for (std::size_t l = 0; l < feature_count_; ++l) {
            out[n * d + l] = sd * rng.normal();
        }
        out[n * d + feature_count_] = beta;
    }
    return out;
}

double BlrPriorInitial::log_density(std::span<const double> y) const {
    return blr_log_prior(y, shape_, rate_);
}

ExplorationSchedule ExplorationSchedule::constant(int outer_steps,
                                                  std::size_t particles,
                                                  std::size_t samples,
                                                  int inner_steps,
                                                  double bandwidth_scale) {
    ExplorationSchedule s;
    s.outer_steps = outer_steps;
    s.particles.assign(static_cast<std::size_t>(outer_steps) + 1, particles);
    s.samples.assign(static_cast<std::size_t>(outer_steps) + 1, samples);
    s.inner_steps = inner_steps;
    s.bandwidth_scale = bandwidth_scale;
    s.validate();
    return s;
}

ExplorationSchedule ExplorationSchedule::growing(int outer_steps,
                                                 std::size_t start,
                                                 int inner_steps,
                                                 double bandwidth_scale) {
    ExplorationSchedule s;
    s.outer_steps = outer_steps;
    s.particles.resize(static_cast<std::size_t>(outer_steps) + 1);
    s.samples.resize(static_cast<std::size_t>(outer_steps) + 1);
    for (std::size_t t = 0; t < s.particles.size(); ++t) {
        s.particles[t] = start + t;
        s.samples[t] = start + t;
    }
    s.inner_steps = inner_steps;
    s.bandwidth_scale = bandwidth_scale;
    s.validate();
    return s;
}

void ExplorationSchedule::validate() const {
    if (outer_steps < 1) {
        throw std::invalid_argument("schedule: outer_steps must be >= 1");
    }
    const std::size_t want = static_cast<std::size_t>(outer_steps) + 1;
    if (particles.size() != want || samples.size() != want) {
        throw std::invalid_argument(
            "schedule: particle/sample sequences must have length T+1");
    }
    for (std::size_t v : particles) {
        if (v == 0) throw std::invalid_argument("schedule: J_t must be >= 1");
    }
    for (std::size_t v : samples) {
        if (v == 0) throw std::invalid_argument("schedule: M_t must be >= 1");
    }
    if (inner_steps < 0) {
        throw std::invalid_argument("schedule: inner_steps must be >= 0");
    }
    if (!(bandwidth_scale > 0.0)) {
        throw std::invalid_argument("schedule: bandwidth scale must be > 0");
    }
}

double bandwidth(std::size_t particle_count, std::size_t dim, double h0) {
    if (particle_count == 0 || dim == 0) {
        throw std::invalid_argument("bandwidth: counts must be >= 1");
    }
    if (!(h0 > 0.0)) {
        throw std::invalid_argument("bandwidth: h0 must be > 0");
    }
    return h0 * std::pow(static_cast<double>(particle_count),
                         -1.0 / (4.0 + static_cast<double>(dim)));
}

std::vector<double> resample(const ParticleMixture& mix, std::size_t j_next,
                             Rng& rng) {
    const std::size_t d = mix.dim();
    std::vector<double> out(j_next * d);
    for (std::size_t n = 0; n < j_next; ++n) {
        const std::size_t j = pick_atom(mix.weights(), rng.uniform01());
        const auto theta = mix.atom(j);
        for (std::size_t c = 0; c < d; ++c) out[n * d + c] = theta[c];
    }
    return out;
}

void perturb(std::vector<double>& atoms, std::size_t dim, double h, Rng& rng) {
    if (!(h > 0.0)) throw std::invalid_argument("perturb: h must be > 0");
    if (dim == 0 || atoms.size() % dim != 0) {
        throw std::invalid_argument("perturb: bad atom buffer");
    }
    for (double& v : atoms) v += h * rng.normal();
}

namespace {

// Bound estimate from a dedicated sample budget; NaN when undefined.
double metric_bound(const ParticleMixture& mix, GaussianKernel kernel,
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

OuterResult run_outer(const TargetModel& target,
                      const ExplorationSchedule& schedule,
                      const TransformConfig& config,
                      const InitialDistribution& initial, Rng rng,
                      const OuterOptions& options) {
    schedule.validate();
    if (initial.dim() != target.dim()) {
        throw std::invalid_argument("run_outer: dimension mismatch");
    }
    const std::size_t d = target.dim();
    OuterResult result;

    Rng init_rng = rng.child(seed_tag::init_draw);
    std::vector<double> atoms = initial.draw(init_rng, schedule.particles[0]);
    std::vector<double> weights(schedule.particles[0],
                                1.0 / static_cast<double>(schedule.particles[0]));

    const int t_count = schedule.outer_steps;
    for (int t = 0; t <= t_count; ++t) {
        Rng outer_rng = rng.child(seed_tag::outer, static_cast<std::uint64_t>(t));
        if (options.on_outer_step) options.on_outer_step(t, outer_rng);

        const std::size_t j_t = schedule.particles[static_cast<std::size_t>(t)];
        const std::size_t m_t = schedule.samples[static_cast<std::size_t>(t)];
        const double h_t = bandwidth(j_t, d, schedule.bandwidth_scale);
        const GaussianKernel kernel{h_t};

        if (!options.carry_weights || weights.size() != j_t) {
            weights.assign(j_t, 1.0 / static_cast<double>(j_t));
        }
        ParticleMixture mix(atoms, weights, d);

        const std::size_t m_metric =
            options.metric_samples > 0 ? options.metric_samples : m_t;
        {
            Rng metric_rng = outer_rng.child(seed_tag::metric, 0);
            result.trace.add(t, 0, "bound_pre",
                             metric_bound(mix, kernel, target, m_metric,
                                          config.alpha, metric_rng),
                             metric_rng.seed());
        }
        if (options.loglik_alpha) {
            Rng metric_rng = outer_rng.child(seed_tag::metric, 2);
            result.trace.add(t, 0, "loglik_pre",
                             metric_bound(mix, kernel, target, m_metric,
                                          *options.loglik_alpha, metric_rng),
                             metric_rng.seed());
        }

        if (schedule.inner_steps > 0) {
            Rng inner_rng = outer_rng.child(seed_tag::inner);
            InnerResult inner;
            try {
                inner = run_inner(mix, kernel, target, schedule.inner_steps,
                                  m_t, config, inner_rng, options.flag_policy);
            } catch (const FlaggedGradientError&) {
                result.trace.add(t, 0, "aborted", 1.0, inner_rng.seed());
                result.last_outer = t - 1;
                return result;  // partial trace, no final mixture
            }
            for (MetricRow row : inner.trace.rows) {
                row.outer = t;
                result.trace.rows.push_back(std::move(row));
            }
            weights = std::move(inner.weights);
            mix = mix.with_weights(weights);
        }

        {
            Rng metric_rng = outer_rng.child(seed_tag::metric, 1);
            result.trace.add(t, schedule.inner_steps, "bound_post",
                             metric_bound(mix, kernel, target, m_metric,
                                          config.alpha, metric_rng),
                             metric_rng.seed());
        }
        if (options.loglik_alpha) {
            Rng metric_rng = outer_rng.child(seed_tag::metric, 3);
            result.trace.add(t, schedule.inner_steps, "loglik_post",
                             metric_bound(mix, kernel, target, m_metric,
                                          *options.loglik_alpha, metric_rng),
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
        const std::size_t j_next =
            schedule.particles[static_cast<std::size_t>(t) + 1];
        Rng resample_rng = outer_rng.child(seed_tag::resample);
        atoms = resample(mix, j_next, resample_rng);
        Rng perturb_rng = outer_rng.child(seed_tag::perturb);
        perturb(atoms, d, h_t, perturb_rng);
        weights.assign(j_next, 1.0 / static_cast<double>(j_next));
    }
    result.completed = true;
    return result;
}

}  // namespace agd
