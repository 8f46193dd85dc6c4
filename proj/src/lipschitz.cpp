#include "lipkit/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace lipkit {

namespace {

// Slack for precondition checks against caller-computed constants; keeps a
// constant obtained as the exact max ratio from failing its own check.
bool within(double lhs, double rhs) { return lhs <= rhs + 1e-12 * std::max(std::abs(rhs), 1.0); }

std::string pair_msg(const MetricSpace& m, int i, int j) {
    return "(" + m.labels[static_cast<size_t>(i)] + ", " + m.labels[static_cast<size_t>(j)] + ")";
}

void check_subset(const MetricSpace& m, const std::vector<int>& subset, size_t value_count) {
    if (subset.size() != value_count)
        throw std::invalid_argument("subset size does not match prescribed value count");
    std::set<int> seen;
    for (int s : subset) {
        if (s < 0 || s >= m.size()) throw std::invalid_argument("subset index out of range");
        if (!seen.insert(s).second) throw std::invalid_argument("subset indices are not distinct");
    }
}

double subset_lip(const MetricSpace& m, const std::vector<int>& subset,
                  const std::vector<double>& f0, double alpha) {
    double L = 0.0;
    for (size_t a = 0; a < subset.size(); ++a)
        for (size_t b = a + 1; b < subset.size(); ++b) {
            const double dd = std::pow(m.d(subset[a], subset[b]), alpha);
            if (dd > 0.0) L = std::max(L, std::abs(f0[a] - f0[b]) / dd);
        }
    return L;
}

}  // namespace

double lip_constant(const MetricSpace& m, const ScalarField& f, double alpha) {
    if (f.size() != m.size()) throw std::invalid_argument("field is not aligned with the space");
    if (!(alpha > 0.0) || alpha > 1.0) throw std::invalid_argument("alpha must lie in (0, 1]");
    double L = 0.0;
    for (int i = 0; i < m.size(); ++i)
        for (int j = i + 1; j < m.size(); ++j)
            L = std::max(L, std::abs(f[i] - f[j]) / std::pow(m.d(i, j), alpha));
    return L;
}

ModulusProfile modulus_profile(const MetricSpace& m, const ScalarField& f, double alpha,
                               const std::vector<double>& scales) {
    if (scales.empty()) throw std::invalid_argument("scale grid is empty");
    for (size_t t = 0; t < scales.size(); ++t) {
        if (!(scales[t] > 0.0)) throw std::invalid_argument("scales must be positive");
        if (t > 0 && !(scales[t] > scales[t - 1]))
            throw std::invalid_argument("scales must be strictly increasing");
    }
    if (f.size() != m.size()) throw std::invalid_argument("field is not aligned with the space");
    ModulusProfile profile;
    profile.alpha = alpha;
    profile.scales = scales;
    profile.ratios.assign(scales.size(), 0.0);
    for (int i = 0; i < m.size(); ++i)
        for (int j = i + 1; j < m.size(); ++j) {
            const double dij = m.d(i, j);
            const double ratio = std::abs(f[i] - f[j]) / std::pow(dij, alpha);
            for (size_t t = 0; t < scales.size(); ++t)
                if (dij <= scales[t]) profile.ratios[t] = std::max(profile.ratios[t], ratio);
        }
    return profile;
}

std::vector<double> decile_scales(const MetricSpace& m) {
    std::vector<double> ds;
    for (int i = 0; i < m.size(); ++i)
        for (int j = i + 1; j < m.size(); ++j) ds.push_back(m.d(i, j));
    if (ds.empty()) return {1.0};
    std::sort(ds.begin(), ds.end());
    std::vector<double> grid;
    for (int k = 1; k <= 10; ++k) {
        size_t idx = std::min(ds.size() - 1, static_cast<size_t>(k) * ds.size() / 10);
        if (k == 10) idx = ds.size() - 1;
        const double v = ds[idx];
        if (grid.empty() || v > grid.back()) grid.push_back(v);
    }
    return grid;
}

ExtensionResult mcshane_extend(const MetricSpace& m, const std::vector<int>& subset,
                               const std::vector<double>& f0, double K, double alpha) {
    check_subset(m, subset, f0.size());
    if (subset.empty()) throw std::invalid_argument("subset is empty");
    if (!(K >= 0.0)) throw std::invalid_argument("K must be nonnegative");
    for (size_t a = 0; a < subset.size(); ++a)
        for (size_t b = a + 1; b < subset.size(); ++b) {
            const double bound = K * std::pow(m.d(subset[a], subset[b]), alpha);
            if (!within(std::abs(f0[a] - f0[b]), bound))
                throw std::invalid_argument("prescribed values are not " + std::to_string(K) +
                                            "-Lipschitz: pair " + pair_msg(m, subset[a], subset[b]));
        }

    ExtensionResult out;
    out.operator_name = "mcshane";
    out.field = ScalarField(static_cast<size_t>(m.size()), 0.0);
    std::vector<int> where(static_cast<size_t>(m.size()), -1);
    for (size_t a = 0; a < subset.size(); ++a) where[static_cast<size_t>(subset[a])] = static_cast<int>(a);
    for (int x = 0; x < m.size(); ++x) {
        if (where[static_cast<size_t>(x)] >= 0) {
            // Restriction identity is exact by construction; the min over the
            // other terms can only round upward past f0.
            out.field[x] = f0[static_cast<size_t>(where[static_cast<size_t>(x)])];
            continue;
        }
        double g = std::numeric_limits<double>::infinity();
        for (size_t a = 0; a < subset.size(); ++a)
            g = std::min(g, f0[a] + K * std::pow(m.d(x, subset[a]), alpha));
        out.field[x] = g;
    }
    out.constants = {{"K", K}, {"alpha", alpha}};
    out.lip_constant_before = subset_lip(m, subset, f0, alpha);
    out.lip_constant_after = lip_constant(m, out.field, alpha);
    return out;
}

double bump_profile_constant(const MetricSpace& m, const std::vector<int>& subset, double alpha,
                             double gap_r) {
    const double shift = std::pow(gap_r, alpha) / 2.0;
    auto h = [&](double a) { return std::max(std::pow(a, alpha) - shift, 0.0); };
    std::set<double> realized{0.0};
    for (int x = 0; x < m.size(); ++x)
        for (int s : subset) realized.insert(m.d(x, s));
    std::vector<double> ds(realized.begin(), realized.end());
    double L = 0.0;
    for (size_t a = 0; a < ds.size(); ++a)
        for (size_t b = a + 1; b < ds.size(); ++b)
            L = std::max(L, std::abs(h(ds[a]) - h(ds[b])) / std::pow(ds[b] - ds[a], alpha));
    return L;
}

namespace {

ScalarField littlelip_nonneg(const MetricSpace& m, const std::vector<int>& subset,
                             const std::vector<double>& f0, double alpha, double C, double gap_r,
                             const std::vector<int>& where) {
    const double shift = std::pow(gap_r, alpha) / 2.0;
    ScalarField g(static_cast<size_t>(m.size()), 0.0);
    for (int x = 0; x < m.size(); ++x) {
        if (where[static_cast<size_t>(x)] >= 0) {
            g[x] = f0[static_cast<size_t>(where[static_cast<size_t>(x)])];
            continue;
        }
        double v = std::numeric_limits<double>::infinity();
        for (size_t a = 0; a < subset.size(); ++a) {
            const double bump = std::max(std::pow(m.d(x, subset[a]), alpha) - shift, 0.0);
            v = std::min(v, f0[a] + 2.0 * C * bump);
        }
        g[x] = v;
    }
    return g;
}

}  // namespace

ExtensionResult littlelip_extend_separated(const MetricSpace& m, const std::vector<int>& subset,
                                           const std::vector<double>& f0, double alpha, double C,
                                           double gap_r) {
    check_subset(m, subset, f0.size());
    if (subset.empty()) throw std::invalid_argument("subset is empty");
    if (!(gap_r > 0.0)) throw std::invalid_argument("gap_r must be positive");
    if (!(C >= 0.0)) throw std::invalid_argument("C must be nonnegative");
    for (size_t a = 0; a < subset.size(); ++a)
        for (size_t b = a + 1; b < subset.size(); ++b) {
            if (!(m.d(subset[a], subset[b]) > gap_r))
                throw std::invalid_argument("subset gap violated: pair " +
                                            pair_msg(m, subset[a], subset[b]) + " is within " +
                                            std::to_string(gap_r));
            const double bound = C * std::pow(m.d(subset[a], subset[b]), alpha);
            if (!within(std::abs(f0[a] - f0[b]), bound))
                throw std::invalid_argument("prescribed values exceed the Lipschitz certificate: pair " +
                                            pair_msg(m, subset[a], subset[b]));
        }

    std::vector<int> where(static_cast<size_t>(m.size()), -1);
    for (size_t a = 0; a < subset.size(); ++a) where[static_cast<size_t>(subset[a])] = static_cast<int>(a);

    ExtensionResult out;
    out.operator_name = "littlelip_separated";
    const bool nonneg = std::all_of(f0.begin(), f0.end(), [](double v) { return v >= 0.0; });
    if (nonneg) {
        out.field = littlelip_nonneg(m, subset, f0, alpha, C, gap_r, where);
    } else {
        // The formula needs f0 >= 0; split into positive and negative parts.
        std::vector<double> plus(f0.size()), minus(f0.size());
        for (size_t a = 0; a < f0.size(); ++a) {
            plus[a] = std::max(f0[a], 0.0);
            minus[a] = std::max(-f0[a], 0.0);
        }
        const ScalarField gp = littlelip_nonneg(m, subset, plus, alpha, C, gap_r, where);
        const ScalarField gm = littlelip_nonneg(m, subset, minus, alpha, C, gap_r, where);
        out.field = ScalarField(static_cast<size_t>(m.size()), 0.0);
        for (int x = 0; x < m.size(); ++x) out.field[x] = gp[x] - gm[x];
        for (size_t a = 0; a < subset.size(); ++a) out.field[subset[a]] = f0[a];
    }
    out.constants = {{"C", C},
                     {"alpha", alpha},
                     {"gap_r", gap_r},
                     {"profile_lip", bump_profile_constant(m, subset, alpha, gap_r)},
                     {"split", nonneg ? 0.0 : 1.0}};
    out.lip_constant_before = subset_lip(m, subset, f0, alpha);
    out.lip_constant_after = lip_constant(m, out.field, alpha);
    return out;
}

ExtensionResult bump_sum_extend(const MetricSpace& m, const std::vector<int>& centers,
                                const std::vector<double>& radii, const std::vector<double>& values,
                                double alpha) {
    check_subset(m, centers, values.size());
    if (centers.size() != radii.size())
        throw std::invalid_argument("center and radius counts differ");
    for (double r : radii)
        if (!(r > 0.0)) throw std::invalid_argument("radii must be positive");
    for (size_t a = 0; a < centers.size(); ++a)
        for (size_t b = a + 1; b < centers.size(); ++b) {
            const double need = radii[a] + radii[b];
            if (m.d(centers[a], centers[b]) < need * (1.0 - 1e-9))
                throw std::invalid_argument("centers too close for their radii: pair " +
                                            pair_msg(m, centers[a], centers[b]));
        }

    auto h = [alpha](double t) {
        const double inner = std::max(2.0 * std::pow(t, alpha) - 1.0, 0.0);
        return std::max(1.0 - inner, 0.0);
    };

    ExtensionResult out;
    out.operator_name = "bump_sum";
    out.field = ScalarField(static_cast<size_t>(m.size()), 0.0);
    for (int x = 0; x < m.size(); ++x) {
        double sum = 0.0;
        int support = 0;
        for (size_t a = 0; a < centers.size(); ++a) {
            const double term = h(2.0 * m.d(x, centers[a]) / radii[a]);
            if (term != 0.0) {
                ++support;
                sum += values[a] * term;
            }
        }
        if (support > 1)
            throw std::logic_error("bump sum has overlapping support at point " +
                                   m.labels[static_cast<size_t>(x)]);
        out.field[x] = sum;
    }
    out.constants = {{"alpha", alpha}, {"centers", static_cast<double>(centers.size())}};
    out.lip_constant_before = 0.0;
    out.lip_constant_after = lip_constant(m, out.field, alpha);
    return out;
}

ExtensionResult rapid_sequence_extend(const MetricSpace& m, const std::vector<int>& seq, int x0,
                                      const std::vector<double>& f0_seq, double f0_at_x0,
                                      double alpha) {
    check_subset(m, seq, f0_seq.size());
    if (x0 < 0 || x0 >= m.size()) throw std::invalid_argument("limit point index out of range");
    for (int s : seq)
        if (s == x0)
            throw std::invalid_argument("sequence contains the limit point; values would conflict");
    for (size_t n = 0; n + 1 < seq.size(); ++n) {
        const double dn = m.d(seq[n], x0);
        const double dn1 = m.d(seq[n + 1], x0);
        if (dn1 > dn / 2.0 + 1e-12 * dn)
            throw std::invalid_argument("rapid convergence violated between " +
                                        pair_msg(m, seq[n], seq[n + 1]) + ": " + std::to_string(dn1) +
                                        " > " + std::to_string(dn) + "/2");
    }

    std::vector<double> radii(seq.size()), residuals(f0_seq.size());
    for (size_t n = 0; n < seq.size(); ++n) {
        radii[n] = m.d(seq[n], x0) / 3.0;
        residuals[n] = f0_seq[n] - f0_at_x0;
    }
    ExtensionResult bump = bump_sum_extend(m, seq, radii, residuals, alpha);

    ExtensionResult out;
    out.operator_name = "rapid_sequence";
    out.field = ScalarField(static_cast<size_t>(m.size()), 0.0);
    for (int x = 0; x < m.size(); ++x) out.field[x] = f0_at_x0 + bump.field[x];
    // Pin prescribed points to the prescribed values; the formula agrees up
    // to the rounding of a + (f0 - a).
    for (size_t n = 0; n < seq.size(); ++n) out.field[seq[n]] = f0_seq[n];
    out.field[x0] = f0_at_x0;
    out.constants = {{"alpha", alpha}, {"sequence_length", static_cast<double>(seq.size())}};
    {
        std::vector<int> all = seq;
        std::vector<double> vals = f0_seq;
        all.push_back(x0);
        vals.push_back(f0_at_x0);
        out.lip_constant_before = subset_lip(m, all, vals, alpha);
    }
    out.lip_constant_after = lip_constant(m, out.field, alpha);
    return out;
}

}  // namespace lipkit
