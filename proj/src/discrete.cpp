#include "agd/discrete.hpp"

#include <cmath>
#include <stdexcept>

#include "agd/numeric.hpp"
#include "agd/mixture.hpp"
#include "agd/update.hpp"

namespace agd {

DiscreteProblem::DiscreteProblem(std::vector<double> kernel,
                                 std::vector<double> masses,
                                 std::size_t atom_count, std::size_t grid_count)
    : kernel_(std::move(kernel)),
      masses_(std::move(masses)),
      atom_count_(atom_count),
      grid_count_(grid_count) {
    if (atom_count_ == 0 || grid_count_ == 0) {
        throw std::invalid_argument("problem must have atoms and grid points");
    }
    if (kernel_.size() != atom_count_ * grid_count_ ||
        masses_.size() != grid_count_) {
        throw std::invalid_argument("problem buffer size mismatch");
    }
    log_kernel_.resize(kernel_.size());
    for (std::size_t n = 0; n < kernel_.size(); ++n) {
        if (!(kernel_[n] > 0.0) || !std::isfinite(kernel_[n])) {
            throw std::invalid_argument("kernel entries must be positive");
        }
        log_kernel_[n] = std::log(kernel_[n]);
    }
    log_masses_.resize(grid_count_);
    total_mass_ = 0.0;
    for (std::size_t i = 0; i < grid_count_; ++i) {
        if (!(masses_[i] > 0.0) || !std::isfinite(masses_[i])) {
            throw std::invalid_argument("target masses must be positive");
        }
        log_masses_[i] = std::log(masses_[i]);
        total_mass_ += masses_[i];
    }
}

std::vector<double> DiscreteProblem::log_mixture_on_grid(
    std::span<const double> weights) const {
    if (weights.size() != atom_count_) {
        throw std::invalid_argument("weight vector size mismatch");
    }
    std::vector<double> logw(atom_count_);
    for (std::size_t j = 0; j < atom_count_; ++j) {
        logw[j] = weights[j] > 0.0 ? std::log(weights[j]) : neg_inf;
    }
    std::vector<double> out(grid_count_);
    parallel_for(grid_count_, [&](std::size_t i) {
        double best = neg_inf;
        for (std::size_t j = 0; j < atom_count_; ++j) {
            const double v = logw[j] + log_kernel_[j * grid_count_ + i];
            if (v > best) best = v;
        }
        double s = 0.0;
        for (std::size_t j = 0; j < atom_count_; ++j) {
            const double v = logw[j] + log_kernel_[j * grid_count_ + i];
            if (v == neg_inf) continue;
            s += std::exp(v - best);
        }
        out[i] = best + std::log(s);
    });
    return out;
}

DiscreteProblem random_problem(Rng& rng, const RandomProblemParams& params) {
    const std::size_t j_count =
        params.min_atoms +
        static_cast<std::size_t>(rng.uniform01() *
                                 static_cast<double>(params.max_atoms -
                                                     params.min_atoms + 1));
    const std::size_t i_count =
        params.min_grid +
        static_cast<std::size_t>(rng.uniform01() *
                                 static_cast<double>(params.max_grid -
                                                     params.min_grid + 1));
    const std::size_t j_eff = std::min(j_count, params.max_atoms);
    const std::size_t i_eff = std::min(i_count, params.max_grid);

    std::vector<double> kernel(j_eff * i_eff);
    for (double& v : kernel) {
        v = std::exp(params.log_lo +
                     (params.log_hi - params.log_lo) * rng.uniform01());
    }
    if (params.row_stochastic) {
        for (std::size_t j = 0; j < j_eff; ++j) {
            double row = 0.0;
            for (std::size_t i = 0; i < i_eff; ++i) row += kernel[j * i_eff + i];
            for (std::size_t i = 0; i < i_eff; ++i) kernel[j * i_eff + i] /= row;
        }
    }
    std::vector<double> masses(i_eff);
    for (double& v : masses) {
        v = std::exp(params.log_lo +
                     (params.log_hi - params.log_lo) * rng.uniform01());
    }
    return DiscreteProblem(std::move(kernel), std::move(masses), j_eff, i_eff);
}

std::vector<double> random_simplex(Rng& rng, std::size_t j_count) {
    std::vector<double> w(j_count);
    double total = 0.0;
    for (double& v : w) {
        v = std::exp(2.0 * rng.normal());
        total += v;
    }
    for (double& v : w) v /= total;
    return w;
}

double psi_exact(const DiscreteProblem& problem, std::span<const double> weights,
                 AlphaParam alpha) {
    validate_simplex(weights);
    const auto log_mix = problem.log_mixture_on_grid(weights);
    std::vector<double> terms(problem.grid_count());
    parallel_for(problem.grid_count(), [&](std::size_t i) {
        const double u = std::exp(log_mix[i] - problem.log_mass_at(i));
        terms[i] = f_alpha(u, alpha) * problem.mass_at(i);
    });
    return sum(terms);
}

namespace {

std::vector<double> gradient_impl(const DiscreteProblem& problem,
                                  std::span<const double> weights,
                                  AlphaParam alpha, bool parallel) {
    validate_simplex(weights);
    const auto log_mix = problem.log_mixture_on_grid(weights);
    const std::size_t i_count = problem.grid_count();
    std::vector<double> fprime(i_count);
    auto fill_fprime = [&](std::size_t i) {
        const double u = std::exp(log_mix[i] - problem.log_mass_at(i));
        fprime[i] = f_alpha_prime(u, alpha);
    };
    if (parallel) {
        parallel_for(i_count, fill_fprime);
    } else {
        serial_for(i_count, fill_fprime);
    }
    std::vector<double> b(problem.atom_count());
    auto fill_b = [&](std::size_t j) {
        double s = 0.0;
        for (std::size_t i = 0; i < i_count; ++i) {
            s += problem.kernel_at(j, i) * fprime[i];
        }
        b[j] = s;
    };
    if (parallel) {
        parallel_for(problem.atom_count(), fill_b);
    } else {
        serial_for(problem.atom_count(), fill_b);
    }
    for (double v : b) {
        if (!std::isfinite(v)) {
            throw std::runtime_error(
                "exact_gradient: non-finite gradient entry (objective blows "
                "up for this alpha on this problem)");
        }
    }
    return b;
}

}  // namespace

std::vector<double> exact_gradient(const DiscreteProblem& problem,
                                   std::span<const double> weights,
                                   AlphaParam alpha) {
    return gradient_impl(problem, weights, alpha, true);
}

std::vector<double> exact_gradient_serial(const DiscreteProblem& problem,
                                          std::span<const double> weights,
                                          AlphaParam alpha) {
    return gradient_impl(problem, weights, alpha, false);
}

std::vector<double> exact_one_step(const DiscreteProblem& problem,
                                   std::span<const double> weights,
                                   const TransformConfig& config, double eta) {
    const auto b = exact_gradient(problem, weights, config.alpha);
    return apply_transform_update(weights, b, config, eta);
}

ExactTrace run_exact(const DiscreteProblem& problem,
                     std::span<const double> initial_weights,
                     const TransformConfig& config, int steps, bool force) {
    if (!force) {
        const auto report = validate_monotonicity(config);
        if (report.verdict == Admissibility::Violation) {
            throw std::invalid_argument("run_exact: inadmissible transform: " +
                                        report.detail);
        }
    }
    ExactTrace trace;
    std::vector<double> w(initial_weights.begin(), initial_weights.end());
    trace.weights.push_back(w);
    trace.psi.push_back(psi_exact(problem, w, config.alpha));
    for (int n = 1; n <= steps; ++n) {
        const double eta = learning_rate(config, n, steps);
        auto b = exact_gradient(problem, w, config.alpha);
        w = apply_transform_update(w, b, config, eta);
        trace.gradients.push_back(std::move(b));
        trace.etas.push_back(eta);
        trace.weights.push_back(w);
        trace.psi.push_back(psi_exact(problem, w, config.alpha));
    }
    return trace;
}

}  // namespace agd
