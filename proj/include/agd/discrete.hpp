#pragma once
// Finite discrete problems: the exactly-computable world.
//
// A DiscreteProblem fixes J atoms, a finite grid y_1..y_I with counting
// reference measure, a strictly positive kernel matrix k(theta_j, y_i) and
// strictly positive target masses p_i. On it the objective
//
//   Psi_a(lambda) = sum_i f_a(mu k(y_i) / p_i) p_i,   mu k(y_i) = sum_j lambda_j k_ji
//
// and its gradient
//
//   b_j = sum_i k_ji f_a'(mu k(y_i) / p_i)
//
// are plain sums, so descent-step guarantees (per-step decrease, the refined
// decrease bound, fixed-point behavior) can be checked against brute force.
// All densities are kept in log domain; ratios are formed as
// exp(log mu k - log p).
//
// Random instances: kernel entries and masses drawn log-uniform on
// [e^-3, e^3], J in {2..8}, I in {5..50}, and each kernel row normalized to
// unit mass on the grid. Row normalization makes the kernel a transition
// density w.r.t. the counting measure, which is what pins the gradient range
// (a-1) b + 1 > 0 that the power transform's domain relies on.

#include <cstddef>
#include <span>
#include <vector>

#include "agd/alpha.hpp"
#include "agd/rng.hpp"
#include "agd/transforms.hpp"

namespace agd {

class DiscreteProblem {
public:
    // kernel: row-major J x I, strictly positive; masses: I strictly positive.
    DiscreteProblem(std::vector<double> kernel, std::vector<double> masses,
                    std::size_t atom_count, std::size_t grid_count);

    std::size_t atom_count() const { return atom_count_; }
    std::size_t grid_count() const { return grid_count_; }

    double kernel_at(std::size_t j, std::size_t i) const {
        return kernel_[j * grid_count_ + i];
    }
    double log_kernel_at(std::size_t j, std::size_t i) const {
        return log_kernel_[j * grid_count_ + i];
    }
    double mass_at(std::size_t i) const { return masses_[i]; }
    double log_mass_at(std::size_t i) const { return log_masses_[i]; }
    double total_mass() const { return total_mass_; }

    // log mu k(y_i) for each grid point.
    std::vector<double> log_mixture_on_grid(
        std::span<const double> weights) const;

private:
    std::vector<double> kernel_;
    std::vector<double> log_kernel_;
    std::vector<double> masses_;
    std::vector<double> log_masses_;
    std::size_t atom_count_;
    std::size_t grid_count_;
    double total_mass_;
};

struct RandomProblemParams {
    std::size_t min_atoms{2};
    std::size_t max_atoms{8};
    std::size_t min_grid{5};
    std::size_t max_grid{50};
    double log_lo{-3.0};
    double log_hi{3.0};
    bool row_stochastic{true};
};

DiscreteProblem random_problem(Rng& rng, const RandomProblemParams& params = {});

// Random interior point of the simplex (normalized exponentials).
std::vector<double> random_simplex(Rng& rng, std::size_t j_count);

// Objective value; throws on dimension mismatch or simplex violation.
double psi_exact(const DiscreteProblem& problem, std::span<const double> weights,
                 AlphaParam alpha);

// Gradient vector b; throws on non-finite entries (overflow for large alpha
// with tiny masses surfaces as an error, not a NaN).
std::vector<double> exact_gradient(const DiscreteProblem& problem,
                                   std::span<const double> weights,
                                   AlphaParam alpha);

// Serial reference for the gradient; the default is the parallel kernel.
std::vector<double> exact_gradient_serial(const DiscreteProblem& problem,
                                          std::span<const double> weights,
                                          AlphaParam alpha);

// One multiplicative step with transform config at step size eta.
std::vector<double> exact_one_step(const DiscreteProblem& problem,
                                   std::span<const double> weights,
                                   const TransformConfig& config, double eta);

struct ExactTrace {
    // weights[n] and psi[n] for n = 0..N; gradients[n] for n = 0..N-1
    // together with the step size used at step n.
    std::vector<std::vector<double>> weights;
    std::vector<double> psi;
    std::vector<std::vector<double>> gradients;
    std::vector<double> etas;
};

// N steps with the config's learning-rate policy. Pre-validates the
// monotonicity tier unless force is set.
ExactTrace run_exact(const DiscreteProblem& problem,
                     std::span<const double> initial_weights,
                     const TransformConfig& config, int steps,
                     bool force = false);

}  // namespace agd
