#pragma once
// Weighted Dirac mixtures and the isotropic Gaussian smoothing kernel.
//
// A ParticleMixture holds J atoms theta_j in R^d and simplex weights
// lambda. Smoothed by a kernel k_h it becomes the density
//   mixture_density(y) = sum_j lambda_j k_h(y - theta_j),
// with log k_h(y - theta) = -||y - theta||^2 / (2 h^2) - (d/2) log(2 pi h^2).
//
// Sampling draws an atom by inverse CDF on the cumulative weights (one
// uniform per sample, ties at a boundary resolved to the lower index) and
// adds h times a standard normal vector.

#include <cstddef>
#include <span>
#include <vector>

#include "agd/rng.hpp"

namespace agd {

struct GaussianKernel {
    double bandwidth{1.0};
};

class ParticleMixture {
public:
    // atoms: row-major J x dim; weights must lie on the simplex to 1e-12.
    ParticleMixture(std::vector<double> atoms, std::vector<double> weights,
                    std::size_t dim);

    static ParticleMixture uniform(std::vector<double> atoms, std::size_t dim);

    std::size_t atom_count() const { return weights_.size(); }
    std::size_t dim() const { return dim_; }

    std::span<const double> atom(std::size_t j) const {
        return {atoms_.data() + j * dim_, dim_};
    }
    const std::vector<double>& atoms() const { return atoms_; }
    const std::vector<double>& weights() const { return weights_; }

    // Replaces the weight vector (atoms fixed); validates the simplex
    // invariant.
    ParticleMixture with_weights(std::vector<double> weights) const;

private:
    std::vector<double> atoms_;
    std::vector<double> weights_;
    std::size_t dim_;
};

void validate_simplex(std::span<const double> weights);

// log k_h(y - theta); throws on dimension mismatch.
double kernel_log_density(std::span<const double> theta,
                          std::span<const double> y, GaussianKernel kernel);

// log sum_j lambda_j k_h(y - theta_j); zero-weight atoms are skipped.
double log_mixture_density(const ParticleMixture& mix, GaussianKernel kernel,
                           std::span<const double> y);

// Index of the atom selected by inverse CDF at u in [0,1).
std::size_t pick_atom(std::span<const double> weights, double u);

// M i.i.d. draws from the smoothed mixture, row-major M x dim.
std::vector<double> sample_mixture(const ParticleMixture& mix,
                                   GaussianKernel kernel, std::size_t m,
                                   Rng& rng);

}  // namespace agd
