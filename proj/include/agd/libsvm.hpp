#pragma once
// libsvm-format ingestion for the logistic-regression experiments.
//
// Lines look like "label idx:val idx:val ..." with 1-based feature indices;
// missing indices are zeros. Labels are remapped to {-1, +1} through a
// configurable map (default covtype.binary: 2 -> +1, 1 -> -1). Features are
// standardized per column to mean 0 / variance 1 at load time and the
// applied shifts are recorded on the returned data.

#include <cstdint>
#include <map>
#include <string>

#include "agd/rng.hpp"
#include "agd/targets.hpp"

namespace agd {

using LabelMap = std::map<int, int>;

LabelMap covtype_label_map();

// Throws std::runtime_error with the line number on malformed input or on a
// label absent from the map. feature_count 0 means infer from the file.
BlrData load_libsvm(const std::string& path, const LabelMap& label_map,
                    bool standardize = true, std::size_t feature_count = 0);

// Inverse of the loader for synthetic fixtures and round-trip tests; raw
// (unstandardized) values are expected.
void write_libsvm(const std::string& path, const BlrData& data,
                  const LabelMap& label_map);

// In-place standardization (used by the loader; exposed for tests).
void standardize_features(BlrData& data);

// Deterministic synthetic binary-classification set in the covtype shape
// (54 features: a dense continuous block followed by sparse binary columns),
// labels drawn from a planted logistic model. Serves as a stand-in fixture
// where the real dataset is not available; labels use the covtype coding.
BlrData make_synthetic_blr(std::size_t rows, std::size_t features,
                           std::uint64_t seed);

}  // namespace agd
