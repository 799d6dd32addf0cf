#pragma once
// Experiment configuration. Values come from defaults, then a config file of
// "key = value" lines ('#' starts a comment), then command-line overrides,
// in that order of precedence.

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "agd/transforms.hpp"

namespace agd {

enum class ExperimentKind { Toy, Blr, OracleSuite };
enum class Method { PowerDescent, MirrorDescent, Ais };

struct ExperimentConfig {
    ExperimentKind experiment{ExperimentKind::Toy};
    Method method{Method::PowerDescent};

    double alpha{0.5};
    double eta0{0.5};
    double kappa{0.0};
    RatePolicy rate_policy{RatePolicy::InverseSqrtN};

    int outer_steps{20};
    std::size_t particles{100};
    std::size_t samples{100};
    bool grow{false};  // J_{t+1} = M_{t+1} = J_t + 1
    int inner_steps{10};
    double h0{1.0};
    std::size_t metric_samples{0};

    std::vector<std::size_t> dims{8};
    int replicates{10};
    std::uint64_t master_seed{1};

    std::string dataset_path;
    bool full_dataset{false};
    std::size_t subsample_rows{5000};
    std::size_t minibatch{100};
    double heldout_fraction{0.2};
    double prior_shape{1.0};
    double prior_rate{0.01};
    std::size_t predict_samples{200};

    double init_variance{5.0};
    std::string output_dir{"out"};
    bool skip_flagged{false};
    double b_infty{std::numeric_limits<double>::infinity()};

    TransformConfig transform() const;
    void validate() const;

    // Canonical "key=value\n" dump (sorted keys); basis of the config hash.
    std::string canonical() const;
    std::uint64_t hash() const;
};

// Applies "key = value" text to a config; unknown keys throw.
void apply_config_line(ExperimentConfig& config, const std::string& key,
                       const std::string& value);
void apply_config_file(ExperimentConfig& config, const std::string& path);
void apply_override(ExperimentConfig& config, const std::string& spec);

std::string method_name(Method m);
std::string experiment_name(ExperimentKind k);

}  // namespace agd
