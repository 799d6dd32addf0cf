#include "agd/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "agd/ais.hpp"
#include "agd/numeric.hpp"
#include "agd/trace.hpp"

namespace agd {

namespace {

namespace fs = std::filesystem;

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(
               clock::now().time_since_epoch())
        .count();
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
}

std::string alpha_tag(double alpha) {
    std::string s = format_double(alpha);
    for (char& ch : s) {
        if (ch == '.') ch = 'p';
        if (ch == '-') ch = 'm';
    }
    return s;
}

void write_timings(const std::string& dir,
                   const std::vector<ReplicateSeries>& series,
                   const std::string& label) {
    std::ofstream out(dir + "/timings.csv", std::ios::app);
    out << "# " << label << '\n';
    out << "replicate,wall_ms\n";
    for (const auto& s : series) {
        out << s.replicate << ',' << format_double(s.wall_ms) << '\n';
    }
}

void write_series_csv(const std::string& path,
                      const std::vector<ReplicateSeries>& series,
                      const std::string& primary_name,
                      const std::string& secondary_name) {
    std::ofstream out(path, std::ios::binary);
    out << "replicate,t," << primary_name << ',' << secondary_name << '\n';
    for (const auto& s : series) {
        for (std::size_t t = 0; t < s.primary.size(); ++t) {
            out << s.replicate << ',' << t << ',' << format_double(s.primary[t])
                << ',' << format_double(s.secondary[t]) << '\n';
        }
    }
}

void write_summary_csv(const std::string& path,
                       const std::vector<ReplicateSeries>& series,
                       const std::string& primary_name,
                       const std::string& secondary_name) {
    if (series.empty()) return;
    const std::size_t t_count = series.front().primary.size();
    std::ofstream out(path, std::ios::binary);
    out << "t,mean_" << primary_name << ",mean_" << secondary_name << '\n';
    for (std::size_t t = 0; t < t_count; ++t) {
        double p = 0.0;
        double q = 0.0;
        for (const auto& s : series) {
            p += s.primary[t];
            q += s.secondary[t];
        }
        p /= static_cast<double>(series.size());
        q /= static_cast<double>(series.size());
        out << t << ',' << format_double(p) << ',' << format_double(q) << '\n';
    }
}

std::vector<double> collect_post(const DescentTrace& trace,
                                 const std::string& metric, int t_count) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(t_count) + 1);
    for (int t = 0; t <= t_count; ++t) {
        out.push_back(trace.last(metric, t));
    }
    return out;
}

ExplorationSchedule schedule_from(const ExperimentConfig& config) {
    if (config.grow) {
        return ExplorationSchedule::growing(config.outer_steps,
                                            config.particles,
                                            config.inner_steps, config.h0);
    }
    return ExplorationSchedule::constant(config.outer_steps, config.particles,
                                         config.samples, config.inner_steps,
                                         config.h0);
}

}  // namespace

std::vector<ReplicateSeries> toy_replicates(const ExperimentConfig& config,
                                            std::size_t dim) {
    const auto target = toy_gaussian_mixture(dim);
    const GaussianInitial initial(dim, config.init_variance);
    const auto schedule = schedule_from(config);
    const TransformConfig transform = config.transform();

    OuterOptions options;
    options.metric_samples = config.metric_samples;
    options.flag_policy =
        config.skip_flagged ? FlagPolicy::SkipStep : FlagPolicy::Abort;
    options.loglik_alpha = AlphaParam{0.0};  // IS log-evidence estimate

    std::vector<ReplicateSeries> series(
        static_cast<std::size_t>(config.replicates));
    parallel_for(series.size(), [&](std::size_t r) {
        const double t0 = now_ms();
        Rng rng(derive_seed(config.master_seed, seed_tag::replicate, r));
        OuterResult result;
        if (config.method == Method::Ais) {
            result = run_ais(*target, schedule, initial, rng, options,
                             AlphaParam{config.alpha});
        } else {
            result = run_outer(*target, schedule, transform, initial, rng,
                               options);
        }
        series[r].replicate = static_cast<int>(r);
        series[r].primary =
            collect_post(result.trace, "bound_post", config.outer_steps);
        series[r].secondary =
            collect_post(result.trace, "loglik_post", config.outer_steps);
        series[r].wall_ms = now_ms() - t0;
    });
    return series;
}

ExperimentFiles run_toy_experiment(const ExperimentConfig& config) {
    config.validate();
    ensure_dir(config.output_dir);
    ExperimentFiles files;
    for (std::size_t dim : config.dims) {
        const auto series = toy_replicates(config, dim);
        const std::string base = config.output_dir + "/toy_" +
                                 method_name(config.method) + "_a" +
                                 alpha_tag(config.alpha) + "_d" +
                                 std::to_string(dim);
        write_series_csv(base + ".csv", series, "renyi_bound",
                         "log_likelihood_estimate");
        write_summary_csv(base + "_summary.csv", series, "renyi_bound",
                          "log_likelihood_estimate");
        write_timings(config.output_dir, series,
                      "toy d=" + std::to_string(dim));
        files.csv_paths.push_back(base + ".csv");
        files.csv_paths.push_back(base + "_summary.csv");
    }
    write_meta(config, "log_z_true=" + format_double(std::log(2.0)));
    return files;
}

// ---------------------------------------------------------------------------

BlrSplit prepare_blr_data(const ExperimentConfig& config) {
    // Load raw, subsample at a fixed seed, then standardize on the working
    // subsample so recorded statistics describe the data actually used.
    BlrData all = load_libsvm(config.dataset_path, covtype_label_map(),
                              /*standardize=*/false);
    constexpr std::uint64_t kSubsampleSeed = 7240339;  // fixed, not master-derived
    if (!config.full_dataset && all.row_count > config.subsample_rows) {
        Rng rng(kSubsampleSeed);
        std::vector<std::size_t> idx(all.row_count);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        // Fisher-Yates using the deterministic stream
        for (std::size_t i = all.row_count - 1; i > 0; --i) {
            const std::size_t j =
                static_cast<std::size_t>(rng.uniform01() * (i + 1));
            std::swap(idx[i], idx[std::min(j, i)]);
        }
        idx.resize(config.subsample_rows);
        BlrData sub;
        sub.row_count = idx.size();
        sub.feature_count = all.feature_count;
        sub.features.resize(sub.row_count * sub.feature_count);
        sub.labels.resize(sub.row_count);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            sub.labels[i] = all.labels[idx[i]];
            std::copy_n(all.features.begin() +
                            static_cast<std::ptrdiff_t>(idx[i] *
                                                        all.feature_count),
                        all.feature_count,
                        sub.features.begin() +
                            static_cast<std::ptrdiff_t>(i * sub.feature_count));
        }
        all = std::move(sub);
    }
    standardize_features(all);

    // Holdout split from the master seed (shared across paired methods).
    Rng split_rng(derive_seed(config.master_seed, seed_tag::split));
    std::vector<std::size_t> idx(all.row_count);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = all.row_count - 1; i > 0; --i) {
        const std::size_t j =
            static_cast<std::size_t>(split_rng.uniform01() * (i + 1));
        std::swap(idx[i], idx[std::min(j, i)]);
    }
    const std::size_t test_count = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(
               config.heldout_fraction * static_cast<double>(all.row_count))));
    const std::size_t train_count = all.row_count - test_count;

    auto take = [&](std::size_t begin, std::size_t count) {
        auto out = std::make_shared<BlrData>();
        out->row_count = count;
        out->feature_count = all.feature_count;
        out->features.resize(count * all.feature_count);
        out->labels.resize(count);
        out->feature_means = all.feature_means;
        out->feature_sds = all.feature_sds;
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t src = idx[begin + i];
            out->labels[i] = all.labels[src];
            std::copy_n(all.features.begin() +
                            static_cast<std::ptrdiff_t>(src *
                                                        all.feature_count),
                        all.feature_count,
                        out->features.begin() +
                            static_cast<std::ptrdiff_t>(i * all.feature_count));
        }
        return out;
    };
    BlrSplit split;
    split.train = take(0, train_count);
    split.test = take(train_count, test_count);
    return split;
}

namespace {

// Accuracy and mean predictive log-likelihood of mixture samples on a
// held-out set.
void blr_metrics(const ParticleMixture& mix, GaussianKernel kernel,
                 const BlrData& test, std::size_t predict_samples, Rng& rng,
                 double& accuracy, double& pred_loglik) {
    const std::size_t d = mix.dim();
    Rng sample_rng = rng.child(seed_tag::metric, 7);
    const auto samples =
        sample_mixture(mix, kernel, predict_samples, sample_rng);
    std::vector<double> probs(test.row_count);
    parallel_for(test.row_count, [&](std::size_t i) {
        probs[i] = blr_predict(samples, predict_samples, d, test.row(i));
    });
    std::size_t correct = 0;
    double ll = 0.0;
    for (std::size_t i = 0; i < test.row_count; ++i) {
        const bool predict_pos = probs[i] >= 0.5;
        const bool is_pos = test.labels[i] > 0;
        if (predict_pos == is_pos) ++correct;
        const double p =
            std::min(1.0 - 1e-16, std::max(1e-300, is_pos ? probs[i]
                                                          : 1.0 - probs[i]));
        ll += std::log(p);
    }
    accuracy = static_cast<double>(correct) / static_cast<double>(test.row_count);
    pred_loglik = ll / static_cast<double>(test.row_count);
}

}  // namespace

std::vector<ReplicateSeries> blr_replicates(const ExperimentConfig& config,
                                            const BlrSplit& split) {
    const auto schedule = schedule_from(config);
    const TransformConfig transform = config.transform();
    const std::size_t l_count = split.train->feature_count;
    const BlrPriorInitial initial(l_count, config.prior_shape,
                                  config.prior_rate);

    std::vector<ReplicateSeries> series(
        static_cast<std::size_t>(config.replicates));
    parallel_for(series.size(), [&](std::size_t r) {
        const double t0 = now_ms();
        Rng rng(derive_seed(config.master_seed, seed_tag::replicate, r));

        // Per-replicate target so concurrent replicates can hold different
        // minibatches.
        BlrTarget target(split.train, config.prior_shape, config.prior_rate);

        OuterOptions options;
        options.metric_samples = config.metric_samples;
        options.flag_policy =
            config.skip_flagged ? FlagPolicy::SkipStep : FlagPolicy::Abort;
        options.on_outer_step = [&](int, Rng& outer_rng) {
            if (config.minibatch == 0 ||
                config.minibatch >= split.train->row_count) {
                return;  // full batch
            }
            Rng batch_rng = outer_rng.child(seed_tag::minibatch);
            std::vector<std::size_t> batch(config.minibatch);
            for (std::size_t& v : batch) {
                v = static_cast<std::size_t>(batch_rng.uniform01() *
                                             static_cast<double>(
                                                 split.train->row_count));
                v = std::min(v, split.train->row_count - 1);
            }
            target.set_batch(std::move(batch));
        };
        options.extra_metrics = [&](int t, const ParticleMixture& mix,
                                    GaussianKernel kernel, Rng& metric_rng,
                                    DescentTrace& trace) {
            double acc = 0.0;
            double ll = 0.0;
            blr_metrics(mix, kernel, *split.test, config.predict_samples,
                        metric_rng, acc, ll);
            trace.add(t, 0, "accuracy", acc, metric_rng.seed());
            trace.add(t, 0, "pred_loglik", ll, metric_rng.seed());
        };

        OuterResult result;
        if (config.method == Method::Ais) {
            result = run_ais(target, schedule, initial, rng, options,
                             AlphaParam{config.alpha});
        } else {
            result = run_outer(target, schedule, transform, initial, rng,
                               options);
        }
        series[r].replicate = static_cast<int>(r);
        series[r].primary =
            collect_post(result.trace, "accuracy", config.outer_steps);
        series[r].secondary =
            collect_post(result.trace, "pred_loglik", config.outer_steps);
        series[r].wall_ms = now_ms() - t0;
    });
    return series;
}

ExperimentFiles run_blr_experiment(const ExperimentConfig& config) {
    config.validate();
    ensure_dir(config.output_dir);
    const auto split = prepare_blr_data(config);
    const auto series = blr_replicates(config, split);
    const std::string base = config.output_dir + "/blr_" +
                             method_name(config.method) + "_a" +
                             alpha_tag(config.alpha);
    write_series_csv(base + ".csv", series, "accuracy",
                     "predictive_log_likelihood");
    write_timings(config.output_dir, series, "blr");
    write_meta(config,
               "standardized_features=1 train_rows=" +
                   std::to_string(split.train->row_count) +
                   " test_rows=" + std::to_string(split.test->row_count));
    ExperimentFiles files;
    files.csv_paths.push_back(base + ".csv");
    return files;
}

void write_meta(const ExperimentConfig& config, const std::string& note) {
    ensure_dir(config.output_dir);
    std::ofstream out(config.output_dir + "/meta.txt", std::ios::binary);
    char hash_hex[32];
    std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                  static_cast<unsigned long long>(config.hash()));
    out << "version=" << kVersionString << '\n';
    out << "config_hash=" << hash_hex << '\n';
    out << "master_seed=" << config.master_seed << '\n';
    if (!note.empty()) out << note << '\n';
    out << "---\n" << config.canonical();
}

}  // namespace agd
