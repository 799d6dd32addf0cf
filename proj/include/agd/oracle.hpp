#pragma once
// Property suite over the exactly-computable discrete world: per-step
// decrease, the variance-based decrease bound, first-variation consistency,
// the importance-sampling special case of the power update, softmax shift
// invariance, stochastic-to-exact total-variation shrinkage, the lower bound
// on the objective, and the admissibility validators (including a seeded
// violation that must be caught).
//
// Each family reports (name, instances checked, worst violation, verdict);
// the suite is deterministic for a fixed seed.

#include <cstdint>
#include <string>
#include <vector>

namespace agd {

struct PropertyResult {
    std::string name;
    std::size_t instances{0};
    double worst{0.0};
    bool pass{false};
    std::string note;
};

struct OracleReport {
    std::vector<PropertyResult> results;
    bool all_pass() const {
        for (const auto& r : results) {
            if (!r.pass) return false;
        }
        return true;
    }
};

OracleReport run_oracle_suite(std::uint64_t seed);

// One line per property: "name instances=N worst=V verdict".
std::string render_report(const OracleReport& report);

}  // namespace agd
