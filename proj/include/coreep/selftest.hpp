// Batch property suite over generated instances: route agreement, every law
// verifier, and the order round-trip. One deterministic pass for a fixed
// seed; results are assembled by instance id in a fixed suite order.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "coreep/matrix.hpp"

namespace coreep {

struct SuiteResult {
    std::string law;
    int passes = 0;
    int failures = 0;
    double max_residual = 0.0;
};

struct SelfTestSummary {
    std::vector<SuiteResult> suites;
    std::uint64_t seed = 0;
    ToleranceConfig tolerances;
    double wall_seconds = 0.0;

    bool all_passed() const {
        for (const auto& s : suites)
            if (s.failures > 0) return false;
        return true;
    }
};

SelfTestSummary run_selftest(int n_instances, int dim_lo, int dim_hi, std::uint64_t seed,
                             const ToleranceConfig& cfg = {});

nlohmann::json summary_to_json(const SelfTestSummary& summary);

}  // namespace coreep
