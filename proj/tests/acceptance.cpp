// Acceptance battery. Each numbered criterion prints one pass/fail line;
// the process exits nonzero if any fails. Instance counts, sizes, seeds
// and tolerances are pinned here.

#include <cstdio>
#include <vector>

#include "lipkit/verify.hpp"

int main() {
    using lipkit::CheckResult;
    std::vector<std::pair<std::string, CheckResult>> rows;

    rows.emplace_back("1 derived-metric closed form equals the program optimum (200 spaces, n<=6, 1e-9)",
                      lipkit::check_dprime_oracle_gate(101, 200));
    rows.emplace_back("2 derived-metric bounds and metric axioms (1000 spaces, n<=12)",
                      lipkit::check_dprime_bounds(202, 1000));
    rows.emplace_back("3 scaling-isomorphism seminorm constants (500 space/field pairs)",
                      lipkit::check_scale_iso_constants(303, 500));
    rows.emplace_back("4 net certification on power families and 100 generated samples",
                      lipkit::check_net_certification(404, 100));
    rows.emplace_back("5 extension operators: exact restriction and seminorm bounds (500 each)",
                      lipkit::check_extension_operators(505, 500));
    rows.emplace_back("6 territory two-algorithm agreement (200 spaces, n<=100) with hop oracle",
                      lipkit::check_territory_agreement(606, 200));
    rows.emplace_back("7 power-family trends: stable witness near 2 vs diverging vacuous witnesses",
                      lipkit::check_family_trends());
    rows.emplace_back("8 operator round trips and order biconditional (1000 operators)",
                      lipkit::check_operator_roundtrips(808, 1000, 1000));
    rows.emplace_back("9 lattice axiom suite: grid families pass, designed families fail as predicted",
                      lipkit::check_axiom_suite());
    rows.emplace_back("10 derived-gap vs expansiveness cross-check (300 spaces)",
                      lipkit::check_separation_crosscheck(1010, 300));

    bool all = true;
    for (const auto& [label, result] : rows) {
        all = all && result.pass;
        std::printf("[%s] criterion %s (%ld cases, %ld violations)%s%s\n",
                    result.pass ? "PASS" : "FAIL", label.c_str(), result.cases, result.violations,
                    result.detail.empty() ? "" : " -- ", result.detail.c_str());
    }
    std::printf("%s\n", all ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES PRESENT");
    return all ? 0 : 1;
}
