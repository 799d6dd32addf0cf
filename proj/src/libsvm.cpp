#include "agd/libsvm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "agd/trace.hpp"

namespace agd {

LabelMap covtype_label_map() { return {{2, +1}, {1, -1}}; }

namespace {

struct ParsedRow {
    int label;
    std::vector<std::pair<std::size_t, double>> entries;  // 0-based index
};

ParsedRow parse_line(const std::string& line, std::size_t line_no,
                     const LabelMap& label_map) {
    std::istringstream in(line);
    std::string tok;
    if (!(in >> tok)) {
        throw std::runtime_error("libsvm: empty record at line " +
                                 std::to_string(line_no));
    }
    ParsedRow row{};
    try {
        const int raw = std::stoi(tok);
        const auto it = label_map.find(raw);
        if (it == label_map.end()) {
            throw std::runtime_error("libsvm: unmapped label " +
                                     std::to_string(raw) + " at line " +
                                     std::to_string(line_no));
        }
        row.label = it->second;
    } catch (const std::invalid_argument&) {
        throw std::runtime_error("libsvm: bad label at line " +
                                 std::to_string(line_no));
    }
    while (in >> tok) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos || colon == 0 ||
            colon + 1 >= tok.size()) {
            throw std::runtime_error("libsvm: malformed entry '" + tok +
                                     "' at line " + std::to_string(line_no));
        }
        std::size_t idx;
        double val;
        try {
            idx = std::stoul(tok.substr(0, colon));
            val = std::stod(tok.substr(colon + 1));
        } catch (const std::exception&) {
            throw std::runtime_error("libsvm: malformed entry '" + tok +
                                     "' at line " + std::to_string(line_no));
        }
        if (idx == 0) {
            throw std::runtime_error("libsvm: indices are 1-based, line " +
                                     std::to_string(line_no));
        }
        row.entries.emplace_back(idx - 1, val);
    }
    return row;
}

}  // namespace

BlrData load_libsvm(const std::string& path, const LabelMap& label_map,
                    bool standardize, std::size_t feature_count) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("libsvm: cannot open " + path);
    }
    std::vector<ParsedRow> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t max_index = feature_count;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto row = parse_line(line, line_no, label_map);
        for (const auto& [idx, val] : row.entries) {
            (void)val;
            max_index = std::max(max_index, idx + 1);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw std::runtime_error("libsvm: no records in " + path);
    }
    BlrData data;
    data.row_count = rows.size();
    data.feature_count = max_index;
    data.features.assign(data.row_count * data.feature_count, 0.0);
    data.labels.resize(data.row_count);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        data.labels[i] = rows[i].label;
        for (const auto& [idx, val] : rows[i].entries) {
            data.features[i * data.feature_count + idx] = val;
        }
    }
    if (standardize) standardize_features(data);
    return data;
}

void write_libsvm(const std::string& path, const BlrData& data,
                  const LabelMap& label_map) {
    // invert the map for writing
    std::map<int, int> inverse;
    for (const auto& [raw, mapped] : label_map) inverse[mapped] = raw;
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("libsvm: cannot write " + path);
    }
    for (std::size_t i = 0; i < data.row_count; ++i) {
        const auto it = inverse.find(data.labels[i]);
        out << (it != inverse.end() ? it->second : data.labels[i]);
        for (std::size_t l = 0; l < data.feature_count; ++l) {
            const double v = data.features[i * data.feature_count + l];
            if (v == 0.0) continue;
            out << ' ' << (l + 1) << ':' << format_double(v);
        }
        out << '\n';
    }
}

void standardize_features(BlrData& data) {
    const std::size_t n = data.row_count;
    const std::size_t l_count = data.feature_count;
    data.feature_means.assign(l_count, 0.0);
    data.feature_sds.assign(l_count, 1.0);
    for (std::size_t l = 0; l < l_count; ++l) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mean += data.features[i * l_count + l];
        }
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = data.features[i * l_count + l] - mean;
            var += d * d;
        }
        var /= static_cast<double>(n);
        const double sd = var > 0.0 ? std::sqrt(var) : 1.0;
        data.feature_means[l] = mean;
        data.feature_sds[l] = sd;
        for (std::size_t i = 0; i < n; ++i) {
            double& v = data.features[i * l_count + l];
            v = (v - mean) / sd;
        }
    }
}

BlrData make_synthetic_blr(std::size_t rows, std::size_t features,
                           std::uint64_t seed) {
    if (rows == 0 || features == 0) {
        throw std::invalid_argument("make_synthetic_blr: empty shape");
    }
    Rng rng(seed);
    const std::size_t dense = std::min<std::size_t>(10, features);

    // Planted coefficients, strongest on the dense block.
    std::vector<double> coef(features);
    for (std::size_t l = 0; l < features; ++l) {
        const double scale = l < dense ? 1.2 : 0.35;
        coef[l] = scale * rng.normal();
    }

    BlrData data;
    data.row_count = rows;
    data.feature_count = features;
    data.features.assign(rows * features, 0.0);
    data.labels.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        double z = 0.0;
        for (std::size_t l = 0; l < features; ++l) {
            double v = 0.0;
            if (l < dense) {
                v = rng.normal();
            } else {
                // sparse binary columns with varying activation rates
                const double p = 0.05 + 0.25 * static_cast<double>(l % 7) / 7.0;
                v = rng.uniform01() < p ? 1.0 : 0.0;
            }
            data.features[i * features + l] = v;
            z += coef[l] * v;
        }
        const double margin = 1.8 * z;
        const double p_pos = 1.0 / (1.0 + std::exp(-margin));
        data.labels[i] = rng.uniform01() < p_pos ? +1 : -1;
    }
    return data;
}

}  // namespace agd
