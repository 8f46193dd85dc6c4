#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lipkit/metric.hpp"

namespace lipkit {

// Piecewise-linear increasing bijection of the reals: linear between
// breakpoints, affine with positive slope beyond them. Closed under exact
// inversion (swap breakpoints and values, invert the end slopes).
struct MonotoneMap {
    std::vector<double> breakpoints;
    std::vector<double> values;
    double left_slope = 1.0;
    double right_slope = 1.0;

    double operator()(double t) const;
    MonotoneMap inverse() const;
    void validate() const;

    static MonotoneMap identity() { return MonotoneMap{{0.0}, {0.0}, 1.0, 1.0}; }
};

// Weighted composition operator: (Tf)(y) = maps[y](f(phi^{-1}(y))) with
// phi a bijection of the point index sets.
struct CompositionOperator {
    std::vector<int> phi;  // phi[x] = image index in Y
    std::vector<MonotoneMap> maps;  // one per Y-point

    int size() const { return static_cast<int>(phi.size()); }
    void validate() const;
    std::vector<int> phi_inverse() const;
};

ScalarField apply_operator(const CompositionOperator& t, const ScalarField& f);
CompositionOperator invert_operator(const CompositionOperator& t);

using FieldOracle = std::function<ScalarField(const ScalarField&)>;

// Black-box factoring of a field transformation into a weighted
// composition: phi from single-point perturbations of a constant field,
// each map from constant probes over the grid. `inconsistency` explains
// the failure when the oracle is not a weighted composition on the grid.
struct FactorResult {
    std::optional<CompositionOperator> op;
    std::string inconsistency;

    bool ok() const { return op.has_value(); }
};
FactorResult factor_operator(const FieldOracle& oracle, int n_points,
                             const std::vector<double>& probe_grid);

// Sampled check of the order-isomorphism biconditional: ordered pairs must
// map to ordered pairs, incomparable pairs must stay incomparable.
struct OrderIsoVerdict {
    bool pass = true;
    int trials = 0;
    std::string failure;
    std::optional<std::pair<ScalarField, ScalarField>> counterexample;
};
OrderIsoVerdict check_order_iso(const FieldOracle& oracle, int n_points, int trials, uint64_t seed);

// Finite family of fields over a common space, standing in for a function
// class on X.
struct FunctionFamily {
    int n_points = 0;
    std::vector<ScalarField> members;
};

// Exhaustive verdicts for the lattice axioms over a finite family with the
// discrete topology. The open-set quantifiers collapse to extremal cases:
// a set that works for U = {x} works for every open U containing x, and a
// function matching g off x handles every closed set avoiding x.
struct AxiomVerdict {
    std::string axiom;
    bool pass = true;
    std::string detail;
};
struct LatticeAxiomReport {
    AxiomVerdict a1, a2, a3, compatible, directed;
    bool all_pass() const { return a1.pass && a2.pass && a3.pass && compatible.pass && directed.pass; }
};
LatticeAxiomReport check_lattice_axioms(const FunctionFamily& family);

// All functions X -> G for a finite value grid G.
FunctionFamily grid_family(int n_points, const std::vector<double>& grid);

// Band truncation witness: clamp(f, a, d). Satisfies g = d where f >= d,
// g = a where f <= a, g = f on [b, c], and a <= g <= d.
ScalarField truncation_witness(const ScalarField& f, double a, double b, double c, double d);

}  // namespace lipkit
