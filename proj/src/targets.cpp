#include "agd/targets.hpp"

#include <cmath>
#include <stdexcept>

#include "agd/numeric.hpp"

namespace agd {

namespace {

double log_normal_iso(std::span<const double> y, double mean_coord,
                      double variance) {
    const double d = static_cast<double>(y.size());
    double sq = 0.0;
    for (double v : y) {
        const double diff = v - mean_coord;
        sq += diff * diff;
    }
    return -sq / (2.0 * variance) - 0.5 * d * std::log(2.0 * M_PI * variance);
}

// log(1/(1+exp(-z))) without overflow.
double log_sigmoid(double z) {
    if (z >= 0.0) return -std::log1p(std::exp(-z));
    return z - std::log1p(std::exp(z));
}

class ToyGaussianMixture : public TargetModel {
public:
    ToyGaussianMixture(std::size_t dim, double separation, double scale)
        : dim_(dim), separation_(separation), log_scale_(std::log(scale)) {
        if (dim_ == 0) throw std::invalid_argument("dim must be >= 1");
        if (!(scale > 0.0)) throw std::invalid_argument("scale must be > 0");
    }

    std::size_t dim() const override { return dim_; }

    double log_density_unnormalized(std::span<const double> y) const override {
        if (y.size() != dim_) {
            throw std::invalid_argument("toy target: dimension mismatch");
        }
        const double la = log_normal_iso(y, -separation_, 1.0);
        const double lb = log_normal_iso(y, separation_, 1.0);
        const double m = std::max(la, lb);
        return log_scale_ + std::log(0.5) + m +
               std::log(std::exp(la - m) + std::exp(lb - m));
    }

private:
    std::size_t dim_;
    double separation_;
    double log_scale_;
};

}  // namespace

std::shared_ptr<TargetModel> toy_gaussian_mixture(std::size_t dim,
                                                  double separation,
                                                  double scale) {
    return std::make_shared<ToyGaussianMixture>(dim, separation, scale);
}

// ---------------------------------------------------------------------------

double blr_log_prior(std::span<const double> y, double shape, double rate) {
    if (y.size() < 2) {
        throw std::invalid_argument("blr: latent must be (w, beta)");
    }
    const std::size_t l_count = y.size() - 1;
    const double beta = y[l_count];
    if (!(beta > 0.0)) return neg_inf;
    const double lbeta = std::log(beta);
    // Gamma(beta; shape, rate), rate = inverse scale
    double lp = shape * std::log(rate) - std::lgamma(shape) +
                (shape - 1.0) * lbeta - rate * beta;
    // w_l | beta ~ N(0, 1/beta)
    double sqw = 0.0;
    for (std::size_t l = 0; l < l_count; ++l) sqw += y[l] * y[l];
    lp += 0.5 * static_cast<double>(l_count) * (lbeta - std::log(2.0 * M_PI)) -
          0.5 * beta * sqw;
    return lp;
}

double blr_log_joint(std::span<const double> y, const BlrData& data,
                     std::span<const std::size_t> batch, double shape,
                     double rate) {
    if (y.size() != data.feature_count + 1) {
        throw std::invalid_argument("blr: latent dimension mismatch");
    }
    if (batch.empty()) {
        throw std::invalid_argument("blr: batch must be non-empty");
    }
    const double prior = blr_log_prior(y, shape, rate);
    if (prior == neg_inf) return neg_inf;
    const std::size_t l_count = data.feature_count;
    double ll = 0.0;
    for (std::size_t i : batch) {
        const auto x = data.row(i);
        double z = 0.0;
        for (std::size_t l = 0; l < l_count; ++l) z += y[l] * x[l];
        ll += log_sigmoid(static_cast<double>(data.labels[i]) * z);
    }
    const double scale =
        static_cast<double>(data.row_count) / static_cast<double>(batch.size());
    return prior + scale * ll;
}

BlrTarget::BlrTarget(std::shared_ptr<const BlrData> data, double shape,
                     double rate)
    : data_(std::move(data)), shape_(shape), rate_(rate) {
    if (!data_ || data_->row_count == 0) {
        throw std::invalid_argument("blr: empty data");
    }
    batch_.resize(data_->row_count);
    for (std::size_t i = 0; i < batch_.size(); ++i) batch_[i] = i;
}

std::size_t BlrTarget::dim() const { return data_->feature_count + 1; }

double BlrTarget::log_density_unnormalized(std::span<const double> y) const {
    return blr_log_joint(y, *data_, batch_, shape_, rate_);
}

void BlrTarget::set_batch(std::vector<std::size_t> batch) {
    if (batch.empty()) {
        batch_.resize(data_->row_count);
        for (std::size_t i = 0; i < batch_.size(); ++i) batch_[i] = i;
        return;
    }
    for (std::size_t i : batch) {
        if (i >= data_->row_count) {
            throw std::invalid_argument("blr: batch index out of range");
        }
    }
    batch_ = std::move(batch);
}

double blr_predict(std::span<const double> samples, std::size_t sample_count,
                   std::size_t dim, std::span<const double> x) {
    if (sample_count == 0) {
        throw std::invalid_argument("blr_predict: no posterior samples");
    }
    if (x.size() > dim) {
        throw std::invalid_argument("blr_predict: covariate too long");
    }
    double acc = 0.0;
    for (std::size_t s = 0; s < sample_count; ++s) {
        const double* w = samples.data() + s * dim;
        double z = 0.0;
        for (std::size_t l = 0; l < x.size(); ++l) z += w[l] * x[l];
        acc += std::exp(log_sigmoid(z));
    }
    return acc / static_cast<double>(sample_count);
}

// ---------------------------------------------------------------------------

ConjugateGaussianTarget::ConjugateGaussianTarget(std::size_t dim,
                                                 double prior_variance,
                                                 std::vector<double> observation)
    : dim_(dim),
      prior_variance_(prior_variance),
      observation_(std::move(observation)) {
    if (dim_ == 0 || observation_.size() != dim_) {
        throw std::invalid_argument("conjugate target: dimension mismatch");
    }
    if (!(prior_variance_ > 0.0)) {
        throw std::invalid_argument("conjugate target: variance must be > 0");
    }
}

double ConjugateGaussianTarget::log_density_unnormalized(
    std::span<const double> y) const {
    if (y.size() != dim_) {
        throw std::invalid_argument("conjugate target: dimension mismatch");
    }
    double sq_prior = 0.0;
    double sq_like = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) {
        sq_prior += y[c] * y[c];
        const double diff = observation_[c] - y[c];
        sq_like += diff * diff;
    }
    const double d = static_cast<double>(dim_);
    return -sq_prior / (2.0 * prior_variance_) -
           0.5 * d * std::log(2.0 * M_PI * prior_variance_) - sq_like / 2.0 -
           0.5 * d * std::log(2.0 * M_PI);
}

double ConjugateGaussianTarget::log_normalizer() const {
    // integral of N(y; 0, v0 I) N(obs; y, I) dy = N(obs; 0, (v0 + 1) I)
    const double v = prior_variance_ + 1.0;
    double sq = 0.0;
    for (double o : observation_) sq += o * o;
    const double d = static_cast<double>(dim_);
    return -sq / (2.0 * v) - 0.5 * d * std::log(2.0 * M_PI * v);
}

std::vector<double> ConjugateGaussianTarget::posterior_mean() const {
    std::vector<double> m(observation_);
    const double f = prior_variance_ / (prior_variance_ + 1.0);
    for (double& v : m) v *= f;
    return m;
}

double ConjugateGaussianTarget::posterior_variance() const {
    return prior_variance_ / (prior_variance_ + 1.0);
}

}  // namespace agd
