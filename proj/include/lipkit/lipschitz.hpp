#pragma once

#include <map>
#include <string>
#include <vector>

#include "lipkit/metric.hpp"

namespace lipkit {

// Largest |f(p)-f(q)| / d(p,q)^alpha over all pairs; 0 when no pair exists.
double lip_constant(const MetricSpace& m, const ScalarField& f, double alpha = 1.0);

// Finite-scale surrogate of the vanishing small-distance difference
// quotient: ratios[j] is the seminorm restricted to pairs with
// d(p,q) <= scales[j].
struct ModulusProfile {
    std::vector<double> scales;
    std::vector<double> ratios;
    double alpha = 1.0;
};

ModulusProfile modulus_profile(const MetricSpace& m, const ScalarField& f, double alpha,
                               const std::vector<double>& scales);

// Default scale grid: deciles of the realized pairwise-distance
// distribution, so profiles are comparable across inputs.
std::vector<double> decile_scales(const MetricSpace& m);

struct ExtensionResult {
    ScalarField field;
    std::string operator_name;
    std::map<std::string, double> constants;
    double restriction_max_error = 0.0;
    double lip_constant_before = 0.0;  // on the prescribed subset, w.r.t. d^alpha
    double lip_constant_after = 0.0;   // of the extension on the whole space
};

// Classical inf-extension: g(x) = min_z [f0(z) + K d(x,z)^alpha].
// Requires f0 to be K-Lipschitz w.r.t. d^alpha on the subset; the result
// restricts to f0 bitwise and has seminorm <= K.
ExtensionResult mcshane_extend(const MetricSpace& m, const std::vector<int>& subset,
                               const std::vector<double>& f0, double K, double alpha);

// Extension from an r-separated subset:
//   g(x) = inf_z [f0(z) + 2C (d(x,z)^alpha - r^alpha/2)^+]
// for f0 >= 0; signed inputs are split as extend(f0+) - extend(f0-).
// `gap_r` is a caller-supplied certificate: distinct subset points must be
// pairwise more than gap_r apart.
ExtensionResult littlelip_extend_separated(const MetricSpace& m, const std::vector<int>& subset,
                                           const std::vector<double>& f0, double alpha, double C,
                                           double gap_r);

// d^alpha seminorm of a -> (a^alpha - r^alpha/2)^+ over the distances
// realized between space points and subset points.
double bump_profile_constant(const MetricSpace& m, const std::vector<int>& subset, double alpha,
                             double gap_r);

// f(x) = sum_n a_n h(2 d(x,x_n)/r_n), h(t) = (1 - (2 t^alpha - 1)^+)^+.
// Requires d(x_m,x_n) >= r_m + r_n; at every point at most one summand is
// nonzero (asserted), f(x_n) = a_n exactly, and f vanishes off the balls.
ExtensionResult bump_sum_extend(const MetricSpace& m, const std::vector<int>& centers,
                                const std::vector<double>& radii, const std::vector<double>& values,
                                double alpha);

// Extension along a rapidly converging sequence: requires
// d(x_{n+1}, x0) <= d(x_n, x0)/2, takes a = f0(x0), residuals
// a_n = f0(x_n) - a, and composes bump_sum_extend with radii
// d(x_n, x0)/3.
ExtensionResult rapid_sequence_extend(const MetricSpace& m, const std::vector<int>& seq, int x0,
                                      const std::vector<double>& f0_seq, double f0_at_x0,
                                      double alpha);

}  // namespace lipkit
