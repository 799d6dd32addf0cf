#pragma once
// Unnormalized target densities.
//
// TargetModel is the narrow interface the descent needs: an unnormalized
// log density on R^d (minus infinity exactly where the target has no mass).
//
// Provided targets:
//  - toy Gaussian pair: Z * [0.5 N(y; -s 1_d, I) + 0.5 N(y; s 1_d, I)],
//    a bimodal test target with known total mass Z;
//  - Bayesian logistic regression: y = (w, beta), Gamma(a, b) prior on the
//    precision beta, N(0, 1/beta) prior on each coefficient, logistic
//    likelihood over labels in {-1, +1}, optionally evaluated on a minibatch
//    with the log likelihood scaled by I/|batch|;
//  - conjugate Gaussian: N(0, v0 I) prior times N(obs; y, I) likelihood,
//    with the exact log normalizer exposed for bound validation.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace agd {

class TargetModel {
public:
    virtual ~TargetModel() = default;
    virtual std::size_t dim() const = 0;
    virtual double log_density_unnormalized(std::span<const double> y) const = 0;
};

std::shared_ptr<TargetModel> toy_gaussian_mixture(std::size_t dim,
                                                  double separation = 2.0,
                                                  double scale = 2.0);

// ---------------------------------------------------------------------------

struct BlrData {
    std::vector<double> features;  // row-major I x L
    std::vector<int> labels;       // entries in {-1, +1}
    std::size_t row_count{0};
    std::size_t feature_count{0};
    // standardization applied at load time, recorded for reporting
    std::vector<double> feature_means;
    std::vector<double> feature_sds;

    std::span<const double> row(std::size_t i) const {
        return {features.data() + i * feature_count, feature_count};
    }
};

// log joint of (w, beta) against the rows in batch; the likelihood term is
// scaled by row_count/|batch|. beta <= 0 returns -inf (outside support, not
// an error: exploration proposals may land there).
double blr_log_joint(std::span<const double> y, const BlrData& data,
                     std::span<const std::size_t> batch, double shape,
                     double rate);

// log of the prior alone (the Gamma-normal part); used as the t=0 proposal
// density in importance-sampling baselines.
double blr_log_prior(std::span<const double> y, double shape, double rate);

class BlrTarget : public TargetModel {
public:
    BlrTarget(std::shared_ptr<const BlrData> data, double shape, double rate);

    std::size_t dim() const override;  // feature_count + 1 (beta last)
    double log_density_unnormalized(std::span<const double> y) const override;

    // Empty batch means full data. set_batch is how minibatching is driven;
    // the target is otherwise immutable.
    void set_batch(std::vector<std::size_t> batch);
    const std::vector<std::size_t>& batch() const { return batch_; }

    const BlrData& data() const { return *data_; }
    double shape() const { return shape_; }
    double rate() const { return rate_; }

private:
    std::shared_ptr<const BlrData> data_;
    double shape_;
    double rate_;
    std::vector<std::size_t> batch_;
};

// Mean of sigmoid(w . x) over posterior samples (row-major S x dim, where the
// first feature_count coordinates of each sample are w). Throws if S = 0.
double blr_predict(std::span<const double> samples, std::size_t sample_count,
                   std::size_t dim, std::span<const double> x);

// ---------------------------------------------------------------------------

class ConjugateGaussianTarget : public TargetModel {
public:
    ConjugateGaussianTarget(std::size_t dim, double prior_variance,
                            std::vector<double> observation);

    std::size_t dim() const override { return dim_; }
    double log_density_unnormalized(std::span<const double> y) const override;

    double log_normalizer() const;  // log integral of the joint
    std::vector<double> posterior_mean() const;
    double posterior_variance() const;

private:
    std::size_t dim_;
    double prior_variance_;
    std::vector<double> observation_;
};

}  // namespace agd
