#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lipkit/metric.hpp"

namespace lipkit {

// Minimum off-diagonal distance; +infinity for a single point.
double separation_gap(const MetricSpace& m);

// Points whose nearest-neighbor distance strictly exceeds eps.
std::vector<int> x_epsilon(const MetricSpace& m, double eps);

struct WitnessReport {
    std::string property;
    // holds | fails | vacuous | horizon-trend
    std::string verdict;
    std::optional<double> witness;
    bool witness_attained = true;
    bool witness_vacuous = false;
    std::optional<std::pair<std::string, std::string>> counterexample;
    std::optional<int> horizon;
    std::string note;
};

// Least admissible constant over the critical candidate set
// {1} u {d(p,e)} u {d(p,e)/d(p,q)}. A constant C is admissible when every
// ordered pair p != q with d(p,e) >= C and d(p,q) < d(p,e)/C satisfies
// d(p,q) < conclusion_eps. Admissible constants form an up-set, so the
// infimum is a candidate; when it is not attained the value is nudged
// strictly above it.
struct CandidateWitness {
    double value = 1.0;
    bool attained = true;
    bool vacuous = false;
};
CandidateWitness least_witness_constant(const PointedSpace& p, double conclusion_eps);

// True when no ordered pair satisfies d(p,e) >= C and d(p,q) < d(p,e)/C.
bool witness_is_vacuous(const PointedSpace& p, double C);

// c* = min over p != q, p != e of d(p,q)/d(p,e). Positive on every valid
// finite space, so the verdict always holds; the magnitude is the signal.
WitnessReport expansive_witness(const PointedSpace& p);

// Least C such that far points (d(p,e) >= C) have no distinct partner
// closer than d(p,e)/C.
WitnessReport expansive_at_inf_witness(const PointedSpace& p);

// Least C such that far near-pairs are forced below eps.
WitnessReport almost_expansive_witness(const PointedSpace& p, double eps);

// Components of the graph with edges d <= eps (chains use a non-strict
// threshold, unlike the strict one in x_epsilon), plus hop diameters.
struct TerritoryDecomposition {
    double epsilon = 0.0;
    std::vector<int> component_of;
    int component_count = 0;
    std::vector<int> step_diameter;
    std::vector<bool> step_bounded;  // always true on finite inputs
};
TerritoryDecomposition ofarrell_decompose(const MetricSpace& m, double eps);

struct ProximalProfile {
    struct Row {
        double eps = 0.0;
        int separated_count = 0;  // |X_eps|
        int clustered_count = 0;  // points outside X_eps
    };
    std::vector<Row> rows;
    // A finite space is always proximally compact; family trends carry the
    // asymptotic diagnostic.
    bool proximally_compact = true;
};
ProximalProfile proximal_profile(const MetricSpace& m, const std::vector<double>& eps_grid);

struct HorizonFamily {
    // geometric {b^n}; doubled {b^n, b^n + 1/n}; arithmetic {a n};
    // harmonic {1/n} u {0}; file_backed point list.
    std::string name;
    double param = 2.0;
    std::vector<double> file_points;
    // Index of the base point within the generated order; defaults to the
    // first generated point.
    int base_index = 0;
};

// Nested samples: the horizon-N point list is a prefix of the horizon-M
// list for N <= M (the harmonic limit point rides at a fixed slot).
PointedSpace family_sample(const HorizonFamily& f, int horizon);

struct TrendParams {
    double epsilon = 0.5;        // for almost_expansive / ofarrell / x_epsilon
    double growth_factor = 1.5;  // consecutive-horizon growth marking divergence
};

struct TrendReport {
    std::string property;
    std::vector<WitnessReport> per_horizon;
    // stable | diverging; a finite-horizon diagnostic, not a theorem.
    std::string verdict;
    bool heuristic = true;
};

// property in {expansive_at_inf, almost_expansive, separation_gap,
// ofarrell, x_epsilon}.
TrendReport family_trend(const HorizonFamily& f, const std::string& property,
                         const std::vector<int>& horizons, const TrendParams& params = {});

}  // namespace lipkit
