#pragma once
// Long-format run records. Every metric lands in one row keyed by
// (outer step, inner step, metric name), tagged with the seed that produced
// it and a wall-clock duration. Rows are ordered by (t, n) in the order the
// run produced them.
//
// CSV output uses UTF-8, '\n' line endings, '.' decimals, and %.17g floats
// (round-trip exact for doubles). Wall-clock times are never written into
// metric CSVs -- reruns with the same seed must produce byte-identical
// files -- they go to a separate timings file.

#include <cstdint>
#include <string>
#include <vector>

namespace agd {

struct MetricRow {
    int outer{0};
    int inner{0};
    std::string metric;
    double value{0.0};
    std::uint64_t seed{0};
    double wall_ms{0.0};
};

struct DescentTrace {
    std::vector<MetricRow> rows;

    void add(int outer, int inner, std::string metric, double value,
             std::uint64_t seed, double wall_ms = 0.0) {
        rows.push_back({outer, inner, std::move(metric), value, seed, wall_ms});
    }

    // Values of one metric in row order.
    std::vector<double> series(const std::string& metric) const;

    // Last value of a metric at a given outer step; NaN when absent.
    double last(const std::string& metric, int outer) const;
};

// %.17g formatting used for every float written to CSV.
std::string format_double(double v);

}  // namespace agd
