#pragma once
// Experiment drivers behind the CLI: replicated runs, metric extraction,
// CSV emission.
//
// Output layout under the configured directory:
//   toy_<method>_a<alpha>_d<d>.csv           replicate,t,renyi_bound,log_likelihood_estimate
//   toy_<method>_a<alpha>_d<d>_summary.csv   t,mean_renyi_bound,mean_log_likelihood_estimate
//   blr_<method>_a<alpha>.csv                replicate,t,accuracy,predictive_log_likelihood
//   timings.csv                              replicate-level wall-clock (non-deterministic)
//   meta.txt                                 config hash, seed, version, notes
//
// Metric CSVs are byte-identical across reruns with the same master seed;
// wall-clock numbers therefore live only in timings.csv.
//
// Seed tree: master -> replicate r (tag "replicate") -> outer step t and its
// sampling/exploration/metric streams; the BLR holdout split uses the tag
// "split" directly under the master seed so both methods of a paired
// comparison see identical splits and minibatches.

#include <string>
#include <vector>

#include "agd/config.hpp"
#include "agd/explore.hpp"
#include "agd/libsvm.hpp"

namespace agd {

inline constexpr const char* kVersionString = "agd 0.1.0";

struct ReplicateSeries {
    int replicate{0};
    std::vector<double> primary;    // per outer step t = 0..T
    std::vector<double> secondary;  // per outer step t = 0..T
    double wall_ms{0.0};
};

struct ExperimentFiles {
    std::vector<std::string> csv_paths;
};

// Runs one method over all configured dims; returns the files written.
ExperimentFiles run_toy_experiment(const ExperimentConfig& config);

// Runs one method on the configured dataset; paired AIS runs reuse the same
// master seed. Returns the files written.
ExperimentFiles run_blr_experiment(const ExperimentConfig& config);

// Shared pieces used by the acceptance suite as well.
std::vector<ReplicateSeries> toy_replicates(const ExperimentConfig& config,
                                            std::size_t dim);

struct BlrSplit {
    std::shared_ptr<BlrData> train;
    std::shared_ptr<BlrData> test;
};

// Load (or reuse) the dataset, subsample to desk scale, standardize, split.
BlrSplit prepare_blr_data(const ExperimentConfig& config);

std::vector<ReplicateSeries> blr_replicates(const ExperimentConfig& config,
                                            const BlrSplit& split);

void write_meta(const ExperimentConfig& config, const std::string& note);

}  // namespace agd
