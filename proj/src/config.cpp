#include "agd/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "agd/trace.hpp"

namespace agd {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

RatePolicy parse_policy(const std::string& v) {
    if (v == "constant") return RatePolicy::Constant;
    if (v == "inv_sqrt_n") return RatePolicy::InverseSqrtN;
    if (v == "inv_sqrt_horizon") return RatePolicy::InverseSqrtHorizon;
    throw std::invalid_argument("unknown rate policy: " + v);
}

std::string policy_name(RatePolicy p) {
    switch (p) {
        case RatePolicy::Constant: return "constant";
        case RatePolicy::InverseSqrtN: return "inv_sqrt_n";
        case RatePolicy::InverseSqrtHorizon: return "inv_sqrt_horizon";
    }
    return "?";
}

std::vector<std::size_t> parse_size_list(const std::string& v) {
    std::vector<std::size_t> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(std::stoul(item));
    }
    if (out.empty()) throw std::invalid_argument("empty list: " + v);
    return out;
}

bool parse_bool(const std::string& v) {
    if (v == "1" || v == "true" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "no") return false;
    throw std::invalid_argument("bad boolean: " + v);
}

}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::PowerDescent: return "power";
        case Method::MirrorDescent: return "mirror";
        case Method::Ais: return "ais";
    }
    return "?";
}

std::string experiment_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Toy: return "toy";
        case ExperimentKind::Blr: return "blr";
        case ExperimentKind::OracleSuite: return "oracle";
    }
    return "?";
}

TransformConfig ExperimentConfig::transform() const {
    TransformConfig t;
    t.alpha = AlphaParam{alpha};
    t.family = method == Method::PowerDescent ? TransformFamily::Power
                                              : TransformFamily::Exponential;
    t.eta0 = eta0;
    t.kappa = kappa;
    t.rate_policy = rate_policy;
    return t;
}

void ExperimentConfig::validate() const {
    if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    if (experiment == ExperimentKind::Toy && dims.empty()) {
        throw std::invalid_argument("toy experiment needs dims");
    }
    if (experiment == ExperimentKind::Blr && dataset_path.empty()) {
        throw std::invalid_argument("blr experiment needs a dataset path");
    }
    if (outer_steps < 1) throw std::invalid_argument("outer_steps must be >= 1");
    if (particles == 0 || samples == 0) {
        throw std::invalid_argument("particles and samples must be >= 1");
    }
    if (inner_steps < 0) throw std::invalid_argument("inner_steps must be >= 0");
    if (!(heldout_fraction > 0.0) || !(heldout_fraction < 1.0)) {
        throw std::invalid_argument("heldout_fraction must lie in (0,1)");
    }
    if (!(eta0 > 0.0)) throw std::invalid_argument("eta0 must be > 0");
}

void apply_config_line(ExperimentConfig& c, const std::string& key,
                       const std::string& value) {
    if (key == "experiment") {
        if (value == "toy") c.experiment = ExperimentKind::Toy;
        else if (value == "blr") c.experiment = ExperimentKind::Blr;
        else if (value == "oracle") c.experiment = ExperimentKind::OracleSuite;
        else throw std::invalid_argument("unknown experiment: " + value);
    } else if (key == "method") {
        if (value == "power") c.method = Method::PowerDescent;
        else if (value == "mirror") c.method = Method::MirrorDescent;
        else if (value == "ais") c.method = Method::Ais;
        else throw std::invalid_argument("unknown method: " + value);
    } else if (key == "alpha") c.alpha = std::stod(value);
    else if (key == "eta0") c.eta0 = std::stod(value);
    else if (key == "kappa") c.kappa = std::stod(value);
    else if (key == "rate_policy") c.rate_policy = parse_policy(value);
    else if (key == "outer_steps") c.outer_steps = std::stoi(value);
    else if (key == "particles") c.particles = std::stoul(value);
    else if (key == "samples") c.samples = std::stoul(value);
    else if (key == "grow") c.grow = parse_bool(value);
    else if (key == "inner_steps") c.inner_steps = std::stoi(value);
    else if (key == "h0") c.h0 = std::stod(value);
    else if (key == "metric_samples") c.metric_samples = std::stoul(value);
    else if (key == "dims") c.dims = parse_size_list(value);
    else if (key == "replicates") c.replicates = std::stoi(value);
    else if (key == "seed") c.master_seed = std::stoull(value);
    else if (key == "dataset") c.dataset_path = value;
    else if (key == "full") c.full_dataset = parse_bool(value);
    else if (key == "subsample_rows") c.subsample_rows = std::stoul(value);
    else if (key == "minibatch") c.minibatch = std::stoul(value);
    else if (key == "heldout_fraction") c.heldout_fraction = std::stod(value);
    else if (key == "prior_shape") c.prior_shape = std::stod(value);
    else if (key == "prior_rate") c.prior_rate = std::stod(value);
    else if (key == "predict_samples") c.predict_samples = std::stoul(value);
    else if (key == "init_variance") c.init_variance = std::stod(value);
    else if (key == "out") c.output_dir = value;
    else if (key == "skip_flagged") c.skip_flagged = parse_bool(value);
    else if (key == "b_infty") c.b_infty = std::stod(value);
    else throw std::invalid_argument("unknown config key: " + key);
}

void apply_config_file(ExperimentConfig& c, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected key = value");
        }
        try {
            apply_config_line(c, trim(line.substr(0, eq)),
                              trim(line.substr(eq + 1)));
        } catch (const std::exception& e) {
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": " + e.what());
        }
    }
}

void apply_override(ExperimentConfig& c, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
        throw std::invalid_argument("override must be key=value: " + spec);
    }
    apply_config_line(c, trim(spec.substr(0, eq)), trim(spec.substr(eq + 1)));
}

std::string ExperimentConfig::canonical() const {
    std::map<std::string, std::string> kv;
    kv["experiment"] = experiment_name(experiment);
    kv["method"] = method_name(method);
    kv["alpha"] = format_double(alpha);
    kv["eta0"] = format_double(eta0);
    kv["kappa"] = format_double(kappa);
    kv["rate_policy"] = policy_name(rate_policy);
    kv["outer_steps"] = std::to_string(outer_steps);
    kv["particles"] = std::to_string(particles);
    kv["samples"] = std::to_string(samples);
    kv["grow"] = grow ? "1" : "0";
    kv["inner_steps"] = std::to_string(inner_steps);
    kv["h0"] = format_double(h0);
    kv["metric_samples"] = std::to_string(metric_samples);
    {
        std::string d;
        for (std::size_t v : dims) {
            if (!d.empty()) d += ',';
            d += std::to_string(v);
        }
        kv["dims"] = d;
    }
    kv["replicates"] = std::to_string(replicates);
    kv["seed"] = std::to_string(master_seed);
    kv["dataset"] = dataset_path;
    kv["full"] = full_dataset ? "1" : "0";
    kv["subsample_rows"] = std::to_string(subsample_rows);
    kv["minibatch"] = std::to_string(minibatch);
    kv["heldout_fraction"] = format_double(heldout_fraction);
    kv["prior_shape"] = format_double(prior_shape);
    kv["prior_rate"] = format_double(prior_rate);
    kv["predict_samples"] = std::to_string(predict_samples);
    kv["init_variance"] = format_double(init_variance);
    kv["skip_flagged"] = skip_flagged ? "1" : "0";
    std::string out;
    for (const auto& [k, v] : kv) {
        out += k;
        out += '=';
        out += v;
        out += '\n';
    }
    return out;
}

std::uint64_t ExperimentConfig::hash() const {
    // FNV-1a over the canonical dump
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace agd
