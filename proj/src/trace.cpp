#include "agd/trace.hpp"

#include <cstdio>
#include <limits>

namespace agd {

std::vector<double> DescentTrace::series(const std::string& metric) const {
    std::vector<double> out;
    for (const auto& row : rows) {
        if (row.metric == metric) out.push_back(row.value);
    }
    return out;
}

double DescentTrace::last(const std::string& metric, int outer) const {
    double v = std::numeric_limits<double>::quiet_NaN();
    for (const auto& row : rows) {
        if (row.outer == outer && row.metric == metric) v = row.value;
    }
    return v;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace agd
