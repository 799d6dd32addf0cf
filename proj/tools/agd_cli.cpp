// Command-line front end.
//
//   agd toy             replicated bimodal-target runs, CSV per dimension
//   agd blr             logistic-regression runs on a libsvm dataset
//   agd oracle          property suite over the exact discrete world
//   agd validate-config admissibility report for the configured transform
//
// Configuration: --config file of "key = value" lines, overridden by
// --override key=value (repeatable) and the direct flags below.
// Exit codes: 0 success, 1 configuration/validation error, 2 numerical
// failure at runtime (flagged gradients under the abort policy, transform
// domain violations).

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "agd/config.hpp"
#include "agd/harness.hpp"
#include "agd/oracle.hpp"
#include "agd/stochastic.hpp"

namespace {

struct CliState {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string method;
    std::string out;
    std::string dataset;
    double alpha{std::numeric_limits<double>::quiet_NaN()};
    double eta0{std::numeric_limits<double>::quiet_NaN()};
    std::uint64_t seed{0};
    bool seed_set{false};
    bool full{false};
    double b_infty{std::numeric_limits<double>::infinity()};
    bool warn_only{false};
};

agd::ExperimentConfig build_config(const CliState& cli) {
    agd::ExperimentConfig config;
    if (!cli.config_path.empty()) {
        agd::apply_config_file(config, cli.config_path);
    }
    for (const auto& ov : cli.overrides) {
        agd::apply_override(config, ov);
    }
    if (!cli.method.empty()) agd::apply_config_line(config, "method", cli.method);
    if (!cli.out.empty()) config.output_dir = cli.out;
    if (!cli.dataset.empty()) config.dataset_path = cli.dataset;
    if (cli.alpha == cli.alpha) config.alpha = cli.alpha;
    if (cli.eta0 == cli.eta0) config.eta0 = cli.eta0;
    if (cli.seed_set) config.master_seed = cli.seed;
    if (cli.full) config.full_dataset = true;
    return config;
}

int run_validate(const agd::ExperimentConfig& config, const CliState& cli) {
    const auto transform = config.transform();
    const auto mono = agd::validate_monotonicity(transform);
    const auto conv = agd::validate_convergence(transform, cli.b_infty);
    auto verdict_name = [](agd::Admissibility v) {
        switch (v) {
            case agd::Admissibility::Ok: return "ok";
            case agd::Admissibility::Conditional: return "conditional";
            case agd::Admissibility::Violation: return "violation";
        }
        return "?";
    };
    std::printf("monotonicity: %s%s%s\n", verdict_name(mono.verdict),
                mono.detail.empty() ? "" : " - ", mono.detail.c_str());
    std::printf("convergence:  %s%s%s\n", verdict_name(conv.verdict),
                conv.detail.empty() ? "" : " - ", conv.detail.c_str());
    const bool bad = conv.verdict == agd::Admissibility::Violation ||
                     mono.verdict == agd::Admissibility::Violation;
    if (bad && !cli.warn_only) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"alpha-divergence descent over mixture weights"};
    app.require_subcommand(1);
    CliState cli;

    app.add_option("--config", cli.config_path, "config file (key = value)");
    app.add_option("--override", cli.overrides, "config override key=value");
    app.add_option("--method", cli.method, "power | mirror | ais");
    app.add_option("--out", cli.out, "output directory");
    app.add_option("--alpha", cli.alpha, "divergence order");
    app.add_option("--eta0", cli.eta0, "base learning rate");
    auto* seed_opt = app.add_option("--seed", cli.seed, "master seed");

    auto* toy = app.add_subcommand("toy", "bimodal-target experiment");
    auto* blr = app.add_subcommand("blr", "logistic-regression experiment");
    blr->add_option("--dataset", cli.dataset, "libsvm file");
    blr->add_flag("--full", cli.full, "use the full dataset (no subsample)");
    auto* oracle = app.add_subcommand("oracle", "exact-world property suite");
    auto* validate =
        app.add_subcommand("validate-config", "transform admissibility report");
    validate->add_option("--b-infty", cli.b_infty,
                         "gradient bound for the convergence tier");
    validate->add_flag("--warn-only", cli.warn_only,
                       "report violations without failing");

    CLI11_PARSE(app, argc, argv);
    cli.seed_set = seed_opt->count() > 0;

    agd::ExperimentConfig config;
    try {
        config = build_config(cli);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    }

    try {
        if (toy->parsed()) {
            config.experiment = agd::ExperimentKind::Toy;
            config.validate();
            const auto files = agd::run_toy_experiment(config);
            for (const auto& f : files.csv_paths) std::printf("wrote %s\n", f.c_str());
            return 0;
        }
        if (blr->parsed()) {
            config.experiment = agd::ExperimentKind::Blr;
            config.validate();
            const auto files = agd::run_blr_experiment(config);
            for (const auto& f : files.csv_paths) std::printf("wrote %s\n", f.c_str());
            return 0;
        }
        if (oracle->parsed()) {
            const auto report = agd::run_oracle_suite(config.master_seed);
            std::printf("%s", agd::render_report(report).c_str());
            return report.all_pass() ? 0 : 2;
        }
        if (validate->parsed()) {
            return run_validate(config, cli);
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const agd::PowerDomainError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const agd::FlaggedGradientError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
