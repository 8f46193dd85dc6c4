#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lipkit/metric.hpp"

namespace lipkit {

struct CheckResult {
    std::string name;
    bool pass = true;
    long cases = 0;
    long violations = 0;
    std::string detail;
};

// Independent oracles used for two-algorithm agreement.
std::vector<int> union_find_components(const MetricSpace& m, double eps);
std::vector<int> floyd_warshall_hops(const MetricSpace& m, double eps);  // n*n, -1 unreachable

// Each check draws its own spaces from the seed, so checks are
// independently reproducible.
CheckResult check_metric_transforms(uint64_t seed, int trials);
CheckResult check_dprime_oracle_gate(uint64_t seed, int spaces);
CheckResult check_dprime_bounds(uint64_t seed, int spaces);
CheckResult check_scale_iso_constants(uint64_t seed, int trials);
CheckResult check_net_certification(uint64_t seed, int trials);
CheckResult check_extension_operators(uint64_t seed, int trials);
CheckResult check_territory_agreement(uint64_t seed, int spaces);
CheckResult check_family_trends();
CheckResult check_operator_roundtrips(uint64_t seed, int operators, int pair_trials);
CheckResult check_axiom_suite();
CheckResult check_separation_crosscheck(uint64_t seed, int spaces);
CheckResult check_witness_grid_agreement(uint64_t seed, int spaces);

// The full battery at a common instance count (the acceptance suite pins
// its own counts per check).
std::vector<CheckResult> run_verify_suite(uint64_t seed, int trials);

}  // namespace lipkit
