#include "lipkit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "lipkit/classify.hpp"
#include "lipkit/derived.hpp"
#include "lipkit/lipschitz.hpp"
#include "lipkit/order_iso.hpp"
#include "lipkit/random.hpp"

namespace lipkit {

namespace {

constexpr double kRelTol = 1e-12;

bool leq_tol(double lhs, double rhs, double tol) { return lhs <= rhs + tol * (1.0 + std::abs(rhs)); }

void note_violation(CheckResult& r, const std::string& what) {
    ++r.violations;
    r.pass = false;
    if (r.detail.empty()) r.detail = what;
}

}  // namespace

std::vector<int> union_find_components(const MetricSpace& m, double eps) {
    const int n = m.size();
    std::vector<int> parent(static_cast<size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[static_cast<size_t>(a)] != a) {
            parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
            a = parent[static_cast<size_t>(a)];
        }
        return a;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (m.d(i, j) <= eps) parent[static_cast<size_t>(find(i))] = find(j);
    std::vector<int> comp(static_cast<size_t>(n), -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        const int root = find(i);
        if (comp[static_cast<size_t>(root)] < 0) comp[static_cast<size_t>(root)] = next++;
        comp[static_cast<size_t>(i)] = comp[static_cast<size_t>(root)];
    }
    return comp;
}

std::vector<int> floyd_warshall_hops(const MetricSpace& m, double eps) {
    const int n = m.size();
    const int inf = n + 1;
    std::vector<int> hop(static_cast<size_t>(n) * n, inf);
    for (int i = 0; i < n; ++i) {
        hop[static_cast<size_t>(i) * n + i] = 0;
        for (int j = 0; j < n; ++j)
            if (j != i && m.d(i, j) <= eps) hop[static_cast<size_t>(i) * n + j] = 1;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const int via = hop[static_cast<size_t>(i) * n + k] + hop[static_cast<size_t>(k) * n + j];
                if (via < hop[static_cast<size_t>(i) * n + j]) hop[static_cast<size_t>(i) * n + j] = via;
            }
    for (int& h : hop)
        if (h >= inf) h = -1;
    return hop;
}

CheckResult check_metric_transforms(uint64_t seed, int trials) {
    CheckResult r;
    r.name = "metric_transforms";
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const PointedSpace p = random_pointed_space(rng, 2, 10);
        const double alpha = rng.uniform(0.05, 1.0);
        const double beta = rng.uniform(0.05, 1.0);
        ++r.cases;

        std::vector<std::vector<double>> rows(static_cast<size_t>(p.size()),
                                              std::vector<double>(static_cast<size_t>(p.size())));
        auto to_rows = [&](const MetricSpace& m) {
            for (int i = 0; i < m.size(); ++i)
                for (int j = 0; j < m.size(); ++j)
                    rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = m.d(i, j);
            return rows;
        };

        const MetricSpace h = holder_transform(p.space, alpha);
        if (!validate_metric(to_rows(h)).ok()) note_violation(r, "holder output failed validation");
        const MetricSpace tr = truncate_metric(p.space);
        if (!validate_metric(to_rows(tr)).ok()) note_violation(r, "truncation output failed validation");

        // Composition law: (d^alpha)^beta = d^(alpha beta).
        const MetricSpace hh = holder_transform(h, beta);
        const MetricSpace direct = holder_transform(p.space, alpha * beta);
        for (int i = 0; i < p.size(); ++i)
            for (int j = 0; j < p.size(); ++j)
                if (std::abs(hh.d(i, j) - direct.d(i, j)) > 1e-12 * (1.0 + direct.d(i, j)))
                    note_violation(r, "holder transforms do not compose");

        // The base weight is 1-Lipschitz.
        const ScalarField xi = base_weight(p);
        for (int i = 0; i < p.size(); ++i)
            for (int j = 0; j < p.size(); ++j)
                if (std::abs(xi[i] - xi[j]) > p.d(i, j) * (1.0 + 1e-12))
                    note_violation(r, "base weight is not 1-Lipschitz");
    }
    return r;
}

CheckResult check_dprime_oracle_gate(uint64_t seed, int spaces) {
    CheckResult r;
    r.name = "dprime_oracle_gate";
    Rng rng(seed);
    for (int s = 0; s < spaces; ++s) {
        const PointedSpace p = random_pointed_space(rng, 2, 6);
        const MetricSpace dp = dprime_matrix(p);
        for (int i = 0; i < p.size(); ++i)
            for (int j = i + 1; j < p.size(); ++j) {
                ++r.cases;
                const double lp = dprime_pair_oracle(p, i, j);
                if (std::abs(lp - dp.d(i, j)) > 1e-9)
                    note_violation(r, "closed form disagrees with the program optimum at " +
                                          p.space.labels[static_cast<size_t>(i)] + "," +
                                          p.space.labels[static_cast<size_t>(j)]);
            }
    }
    return r;
}

CheckResult check_dprime_bounds(uint64_t seed, int spaces) {
    CheckResult r;
    r.name = "dprime_bounds";
    Rng rng(seed);
    for (int s = 0; s < spaces; ++s) {
        const PointedSpace p = random_pointed_space(rng, 2, 12);
        const MetricSpace dp = dprime_matrix(p);
        const SymMatrix rho = rho_matrix(p);
        const ScalarField xi = base_weight(p);
        for (int i = 0; i < p.size(); ++i)
            for (int j = i + 1; j < p.size(); ++j) {
                ++r.cases;
                const double v = dp.d(i, j);
                if (!leq_tol(rho.at(i, j), v, kRelTol)) note_violation(r, "rho exceeds the derived metric");
                if (!leq_tol(v, 3.0 * rho.at(i, j), kRelTol))
                    note_violation(r, "derived metric exceeds three times rho");
                if (!leq_tol(v, 4.0, kRelTol)) note_violation(r, "derived metric exceeds 4");
                const double xi_small = std::min(xi[i], xi[j]);
                if (!leq_tol(v * xi_small, 3.0 * p.d(i, j), kRelTol))
                    note_violation(r, "xi-weighted derived distance exceeds 3d");
            }
        std::vector<std::vector<double>> rows(static_cast<size_t>(p.size()),
                                              std::vector<double>(static_cast<size_t>(p.size())));
        for (int i = 0; i < p.size(); ++i)
            for (int j = 0; j < p.size(); ++j) rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = dp.d(i, j);
        if (!validate_metric(rows).ok()) note_violation(r, "derived matrix failed metric validation");
    }
    return r;
}

CheckResult check_scale_iso_constants(uint64_t seed, int trials) {
    CheckResult r;
    r.name = "scale_iso_constants";
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const PointedSpace p = random_pointed_space(rng, 2, 10);
        const ScalarField f = random_field(rng, p.size(), rng.uniform(0.5, 20.0));
        ++r.cases;
        const ScaleIsoCertificate cert = scale_iso_lip_certificate(p, f);
        if (!cert.forward_ok) note_violation(r, "forward seminorm bound violated");
        if (!cert.inverse_ok) note_violation(r, "inverse seminorm bound violated");

        // Round trip and order preservation.
        const ScalarField fwd = scale_iso_lip(p, f, Direction::forward);
        const ScalarField back = scale_iso_lip(p, fwd, Direction::inverse);
        for (int i = 0; i < p.size(); ++i)
            if (std::abs(back[i] - f[i]) > 1e-12 * (1.0 + std::abs(f[i])))
                note_violation(r, "forward/inverse round trip drifted");
        ScalarField g = f;
        for (int i = 0; i < p.size(); ++i) g[i] += rng.uniform();
        const ScalarField fwd_g = scale_iso_lip(p, g, Direction::forward);
        for (int i = 0; i < p.size(); ++i)
            if (fwd_g[i] < fwd[i]) note_violation(r, "forward map broke pointwise order");
    }
    return r;
}

namespace {

HorizonFamily random_family(Rng& rng) {
    HorizonFamily fam;
    switch (rng.uniform_int(0, 3)) {
        case 0:
            fam.name = "geometric";
            fam.param = rng.uniform(1.4, 3.0);
            break;
        case 1:
            fam.name = "arithmetic";
            fam.param = rng.uniform(0.5, 4.0);
            break;
        case 2:
            fam.name = "doubled";
            fam.param = rng.uniform(1.6, 2.5);
            break;
        default:
            fam.name = "harmonic";
            break;
    }
    return fam;
}

}  // namespace

CheckResult check_net_certification(uint64_t seed, int trials) {
    CheckResult r;
    r.name = "net_certification";
    auto certify = [&r](const PointedSpace& p, int k_max) {
        ++r.cases;
        try {
            const AEConstants a = ae_constants(p, k_max);
            const NetDecomposition net = build_net(p, a);
            if (net.K != std::max(net.C1, 1.5)) note_violation(r, "K moved off max(C1, 3/2)");
            for (const NetCheck& chk : net.checks)
                if (!chk.pass) note_violation(r, "check " + chk.name + " failed");
        } catch (const NetCertificationError& e) {
            note_violation(r, e.what());
        }
    };

    {
        HorizonFamily geo{"geometric", 2.0, {}, 0};
        for (int h = 1; h <= 12; ++h) certify(family_sample(geo, h), 3);
    }
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        HorizonFamily fam = random_family(rng);
        const int horizon = rng.uniform_int(2, 14);
        certify(family_sample(fam, horizon), rng.uniform_int(1, 4));
    }
    return r;
}

CheckResult check_extension_operators(uint64_t seed, int trials) {
    CheckResult r;
    r.name = "extension_operators";
    Rng rng(seed);

    for (int t = 0; t < trials; ++t) {
        const PointedSpace p = random_pointed_space(rng, 2, 12);
        const int n = p.size();
        const double alpha = rng.coin() ? 1.0 : rng.uniform(0.2, 1.0);

        // McShane from a random subset.
        {
            ++r.cases;
            const int subset_size = rng.uniform_int(1, n);
            std::vector<int> idx(static_cast<size_t>(n));
            std::iota(idx.begin(), idx.end(), 0);
            for (int i = n - 1; i > 0; --i) std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(rng.uniform_int(0, i))]);
            std::vector<int> subset(idx.begin(), idx.begin() + subset_size);
            std::vector<double> f0;
            for (int i = 0; i < subset_size; ++i) f0.push_back(rng.uniform(-5.0, 5.0));
            double L0 = 0.0;
            for (size_t a = 0; a < subset.size(); ++a)
                for (size_t b = a + 1; b < subset.size(); ++b)
                    L0 = std::max(L0, std::abs(f0[a] - f0[b]) / std::pow(p.d(subset[a], subset[b]), alpha));
            const double K = L0 * (rng.coin() ? 1.0 : rng.uniform(1.0, 2.0)) + (L0 == 0.0 ? rng.uniform() : 0.0);
            const ExtensionResult ext = mcshane_extend(p.space, subset, f0, K, alpha);
            for (size_t a = 0; a < subset.size(); ++a)
                if (ext.field[subset[a]] != f0[a]) note_violation(r, "mcshane restriction not bitwise");
            if (!leq_tol(ext.lip_constant_after, K, 1e-9)) note_violation(r, "mcshane seminorm exceeds K");
        }

        // Separated-subset extension.
        {
            ++r.cases;
            const double gap_r = rng.uniform(0.1, 0.9) * p.space.max_distance();
            std::vector<int> subset;
            for (int i = 0; i < n; ++i) {
                bool far_enough = true;
                for (int s : subset)
                    if (!(p.d(i, s) > gap_r)) far_enough = false;
                if (far_enough) subset.push_back(i);
            }
            std::vector<double> f0;
            const bool signed_case = rng.coin(0.35);
            for (size_t a = 0; a < subset.size(); ++a)
                f0.push_back(signed_case ? rng.uniform(-4.0, 4.0) : rng.uniform(0.0, 4.0));
            double L0 = 0.0;
            for (size_t a = 0; a < subset.size(); ++a)
                for (size_t b = a + 1; b < subset.size(); ++b)
                    L0 = std::max(L0, std::abs(f0[a] - f0[b]) / std::pow(p.d(subset[a], subset[b]), alpha));
            const double C = std::max(L0, 1e-6) * rng.uniform(1.0, 1.5);
            const ExtensionResult ext = littlelip_extend_separated(p.space, subset, f0, alpha, C, gap_r);
            for (size_t a = 0; a < subset.size(); ++a)
                if (ext.field[subset[a]] != f0[a]) note_violation(r, "littlelip restriction not bitwise");
            const double profile = ext.constants.at("profile_lip");
            if (!leq_tol(ext.lip_constant_after, 2.0 * C * profile + C, 1e-9))
                note_violation(r, "littlelip seminorm exceeds the profile bound");
        }

        // Disjoint bumps: prescribed peaks, zero off the balls, one summand
        // per point (the operator itself asserts single support).
        {
            ++r.cases;
            const int center_count = rng.uniform_int(1, std::max(1, n / 2));
            std::vector<int> idx(static_cast<size_t>(n));
            std::iota(idx.begin(), idx.end(), 0);
            for (int i = n - 1; i > 0; --i) std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(rng.uniform_int(0, i))]);
            std::vector<int> centers(idx.begin(), idx.begin() + center_count);
            std::vector<double> radii, values;
            for (int c : centers) {
                double nearest = std::numeric_limits<double>::infinity();
                for (int other : centers)
                    if (other != c) nearest = std::min(nearest, p.d(c, other));
                const double cap = std::isfinite(nearest) ? nearest / 2.0 : p.space.max_distance() + 1.0;
                radii.push_back(cap * rng.uniform(0.3, 1.0));
                values.push_back(rng.uniform(-3.0, 3.0));
            }
            const ExtensionResult ext = bump_sum_extend(p.space, centers, radii, values, alpha);
            for (size_t a = 0; a < centers.size(); ++a)
                if (ext.field[centers[a]] != values[a]) note_violation(r, "bump peak is not exact");
            for (int x = 0; x < n; ++x) {
                bool inside = false;
                for (size_t a = 0; a < centers.size(); ++a)
                    if (p.d(x, centers[a]) < radii[a]) inside = true;
                if (!inside && ext.field[x] != 0.0) note_violation(r, "bump field leaks outside the balls");
            }
        }
    }

    // Rapidly converging sequences on the line, with bystander points.
    Rng rng2(seed ^ 0x9e3779b97f4a7c15ULL);
    for (int t = 0; t < trials; ++t) {
        ++r.cases;
        const int len = rng2.uniform_int(2, 6);
        const double ratio = rng2.uniform(0.25, 0.5);
        const double scale = rng2.uniform(0.5, 8.0);
        std::vector<double> xs{0.0};
        double v = scale;
        for (int i = 0; i < len; ++i) {
            xs.push_back(v);
            v *= ratio;
        }
        xs.push_back(-scale * rng2.uniform(0.5, 2.0));
        const MetricSpace m = metric_from_line(xs);
        std::vector<int> seq;
        for (int i = 1; i <= len; ++i) seq.push_back(i);
        std::vector<double> f0;
        for (int i = 0; i < len; ++i) f0.push_back(rng2.uniform(-2.0, 2.0));
        const double at_limit = rng2.uniform(-2.0, 2.0);
        const double alpha = rng2.uniform(0.2, 1.0);
        const ExtensionResult ext = rapid_sequence_extend(m, seq, 0, f0, at_limit, alpha);
        for (size_t a = 0; a < seq.size(); ++a)
            if (ext.field[seq[a]] != f0[a]) note_violation(r, "rapid-sequence restriction not exact");
        if (ext.field[0] != at_limit) note_violation(r, "rapid-sequence limit value not exact");
    }
    return r;
}

CheckResult check_territory_agreement(uint64_t seed, int spaces) {
    CheckResult r;
    r.name = "territory_agreement";
    Rng rng(seed);
    for (int s = 0; s < spaces; ++s) {
        const PointedSpace p = random_pointed_space(rng, 2, 100);
        const std::vector<double> grid = decile_scales(p.space);
        for (double eps : grid) {
            ++r.cases;
            const TerritoryDecomposition dec = ofarrell_decompose(p.space, eps);
            const std::vector<int> uf = union_find_components(p.space, eps);
            // Same partition up to relabeling.
            for (int i = 0; i < p.size(); ++i)
                for (int j = i + 1; j < p.size(); ++j)
                    if ((dec.component_of[static_cast<size_t>(i)] == dec.component_of[static_cast<size_t>(j)]) !=
                        (uf[static_cast<size_t>(i)] == uf[static_cast<size_t>(j)]))
                        note_violation(r, "component partitions disagree");
            if (p.size() <= 30) {
                const std::vector<int> hops = floyd_warshall_hops(p.space, eps);
                std::vector<int> diam(static_cast<size_t>(dec.component_count), 0);
                for (int i = 0; i < p.size(); ++i)
                    for (int j = 0; j < p.size(); ++j) {
                        const int h = hops[static_cast<size_t>(i) * p.size() + j];
                        if (h > 0 && dec.component_of[static_cast<size_t>(i)] == dec.component_of[static_cast<size_t>(j)])
                            diam[static_cast<size_t>(dec.component_of[static_cast<size_t>(i)])] =
                                std::max(diam[static_cast<size_t>(dec.component_of[static_cast<size_t>(i)])], h);
                    }
                if (diam != dec.step_diameter) note_violation(r, "step diameters disagree with the hop oracle");
            }
        }
    }
    return r;
}

CheckResult check_family_trends() {
    CheckResult r;
    r.name = "family_trends";
    const std::vector<int> horizons{10, 20, 40};

    {
        ++r.cases;
        HorizonFamily geo{"geometric", 2.0, {}, 0};
        const TrendReport rep = family_trend(geo, "expansive_at_inf", horizons);
        if (rep.verdict != "stable") note_violation(r, "geometric family not stable");
        for (const WitnessReport& w : rep.per_horizon) {
            if (w.witness_vacuous) note_violation(r, "geometric witness is vacuous");
            if (std::abs(w.witness.value_or(0.0) - 2.0) > 0.01)
                note_violation(r, "geometric witness is away from 2");
        }
    }
    {
        ++r.cases;
        HorizonFamily dbl{"doubled", 2.0, {}, 0};
        const TrendReport rep = family_trend(dbl, "expansive_at_inf", horizons);
        if (rep.verdict != "diverging") note_violation(r, "doubled family not diverging");
        for (const WitnessReport& w : rep.per_horizon)
            if (!w.witness_vacuous) note_violation(r, "doubled family produced a non-vacuous witness");
        for (size_t i = 1; i < rep.per_horizon.size(); ++i)
            if (rep.per_horizon[i].witness.value_or(0.0) <
                1.5 * rep.per_horizon[i - 1].witness.value_or(0.0))
                note_violation(r, "doubled witness grew slower than x1.5");
    }
    {
        ++r.cases;
        HorizonFamily dbl{"doubled", 2.0, {}, 0};
        TrendParams params;
        params.epsilon = 0.5;
        const TrendReport rep = family_trend(dbl, "almost_expansive", horizons, params);
        if (rep.verdict != "stable") note_violation(r, "doubled almost-expansive witness not stable");
        const double w0 = rep.per_horizon.front().witness.value_or(0.0);
        for (const WitnessReport& w : rep.per_horizon)
            if (std::abs(w.witness.value_or(0.0) - w0) > 1e-9 * (1.0 + std::abs(w0)))
                note_violation(r, "doubled almost-expansive witness moved across horizons");
    }
    return r;
}

namespace {

MonotoneMap random_map(Rng& rng, const std::vector<double>* grid) {
    MonotoneMap m;
    if (grid) {
        // Breakpoints drawn from the probe grid so factoring is exact.
        for (size_t i = 0; i < grid->size(); ++i)
            if (i == 0 || i + 1 == grid->size() || rng.coin()) m.breakpoints.push_back((*grid)[i]);
    } else {
        const int k = rng.uniform_int(1, 5);
        double t = rng.uniform(-4.0, 0.0);
        for (int i = 0; i < k; ++i) {
            m.breakpoints.push_back(t);
            t += rng.uniform(0.2, 2.0);
        }
    }
    double v = rng.uniform(-4.0, 0.0);
    for (size_t i = 0; i < m.breakpoints.size(); ++i) {
        m.values.push_back(v);
        v += rng.uniform(0.2, 2.0);
    }
    m.left_slope = rng.uniform(0.2, 3.0);
    m.right_slope = rng.uniform(0.2, 3.0);
    return m;
}

CompositionOperator random_operator(Rng& rng, int n, const std::vector<double>* grid) {
    CompositionOperator op;
    op.phi.resize(static_cast<size_t>(n));
    std::iota(op.phi.begin(), op.phi.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(op.phi[static_cast<size_t>(i)], op.phi[static_cast<size_t>(rng.uniform_int(0, i))]);
    for (int i = 0; i < n; ++i) op.maps.push_back(random_map(rng, grid));
    return op;
}

}  // namespace

CheckResult check_operator_roundtrips(uint64_t seed, int operators, int pair_trials) {
    CheckResult r;
    r.name = "operator_roundtrips";
    Rng rng(seed);
    const std::vector<double> grid{-3.0, -1.5, -0.5, 0.0, 1.0, 2.5, 4.0};
    for (int t = 0; t < operators; ++t) {
        const int n = rng.uniform_int(2, 6);
        ++r.cases;

        {
            const CompositionOperator op = random_operator(rng, n, nullptr);
            const CompositionOperator inv = invert_operator(op);
            const ScalarField f = random_field(rng, n, 5.0);
            const ScalarField back = apply_operator(inv, apply_operator(op, f));
            for (int i = 0; i < n; ++i)
                if (std::abs(back[i] - f[i]) > 1e-12 * (1.0 + std::abs(f[i])))
                    note_violation(r, "apply/invert round trip drifted");
            const CompositionOperator twice = invert_operator(inv);
            for (int i = 0; i < n; ++i) {
                if (twice.phi[static_cast<size_t>(i)] != op.phi[static_cast<size_t>(i)])
                    note_violation(r, "double inversion changed phi");
                if (twice.maps[static_cast<size_t>(i)].breakpoints != op.maps[static_cast<size_t>(i)].breakpoints ||
                    twice.maps[static_cast<size_t>(i)].values != op.maps[static_cast<size_t>(i)].values)
                    note_violation(r, "double inversion moved breakpoints");
            }
        }

        {
            const CompositionOperator op = random_operator(rng, n, &grid);
            const FactorResult fact = factor_operator(
                [&op](const ScalarField& f) { return apply_operator(op, f); }, n, grid);
            if (!fact.ok()) {
                note_violation(r, "factoring failed: " + fact.inconsistency);
            } else {
                if (fact.op->phi != op.phi) note_violation(r, "factoring recovered the wrong bijection");
                for (int y = 0; y < n && r.pass; ++y)
                    for (double g : grid)
                        if (std::abs((*fact.op).maps[static_cast<size_t>(y)](g) -
                                     op.maps[static_cast<size_t>(y)](g)) > 1e-9)
                            note_violation(r, "factored map drifts on the probe grid");
            }

            const OrderIsoVerdict verdict = check_order_iso(
                [&op](const ScalarField& f) { return apply_operator(op, f); }, n, pair_trials,
                rng.bits());
            if (!verdict.pass) note_violation(r, "order biconditional failed: " + verdict.failure);
        }
    }
    return r;
}

CheckResult check_axiom_suite() {
    CheckResult r;
    r.name = "axiom_suite";
    for (int n = 1; n <= 4; ++n)
        for (int g = 2; g <= 3; ++g) {
            ++r.cases;
            std::vector<double> grid;
            for (int v = 0; v < g; ++v) grid.push_back(v);
            const LatticeAxiomReport rep = check_lattice_axioms(grid_family(n, grid));
            if (!rep.all_pass())
                note_violation(r, "grid family failed on " + std::to_string(n) + " points");
        }

    {
        ++r.cases;
        FunctionFamily constant_only;
        constant_only.n_points = 2;
        constant_only.members = {ScalarField({0.0, 0.0})};
        const LatticeAxiomReport rep = check_lattice_axioms(constant_only);
        const bool expected = !rep.a1.pass && rep.a2.pass && rep.a3.pass && rep.compatible.pass &&
                              rep.directed.pass;
        if (!expected) note_violation(r, "constant-only family failed the wrong axioms");
    }
    {
        ++r.cases;
        FunctionFamily incomparable;
        incomparable.n_points = 2;
        incomparable.members = {ScalarField({1.0, 0.0}), ScalarField({0.0, 1.0})};
        const LatticeAxiomReport rep = check_lattice_axioms(incomparable);
        const bool expected = !rep.a1.pass && rep.a2.pass && rep.a3.pass && rep.compatible.pass &&
                              !rep.directed.pass;
        if (!expected) note_violation(r, "incomparable pair failed the wrong axioms");
    }

    // Truncation clauses on random fields and bands.
    Rng rng(2024);
    for (int t = 0; t < 200; ++t) {
        ++r.cases;
        const int n = rng.uniform_int(1, 8);
        ScalarField f = random_field(rng, n, 10.0);
        double a = rng.uniform(-6.0, 0.0);
        double d = a + rng.uniform(0.5, 8.0);
        double b = a + (d - a) * rng.uniform(0.0, 0.5);
        double c = b + (d - b) * rng.uniform(0.0, 1.0);
        const ScalarField g = truncation_witness(f, a, b, c, d);
        for (int i = 0; i < n; ++i) {
            const bool clauses = (f[i] < a || g[i] >= a) && (g[i] >= a && g[i] <= d) &&
                                 (!(f[i] >= d) || g[i] == d) && (!(f[i] <= a) || g[i] == a) &&
                                 (!(f[i] >= b && f[i] <= c) || g[i] == f[i]);
            if (!clauses) note_violation(r, "truncation clause violated");
        }
        const ScalarField gg = truncation_witness(g, a, b, c, d);
        if (gg.values != g.values) note_violation(r, "truncation is not idempotent");
    }
    return r;
}

CheckResult check_separation_crosscheck(uint64_t seed, int spaces) {
    CheckResult r;
    r.name = "separation_crosscheck";
    Rng rng(seed);
    for (int s = 0; s < spaces; ++s) {
        const PointedSpace p = random_pointed_space(rng, 2, 10);
        ++r.cases;
        const MetricSpace dp = dprime_matrix(p);
        const double gap_prime = separation_gap(dp);

        const WitnessReport exp = expansive_witness(p);
        const double c_star = exp.witness.value_or(0.0);
        double r_star = std::numeric_limits<double>::infinity();
        for (int i = 0; i < p.size(); ++i)
            if (i != p.base) r_star = std::min(r_star, p.d_to_base(i));
        if (!leq_tol(std::min(c_star, c_star * r_star), gap_prime, 1e-9))
            note_violation(r, "derived gap below the expansiveness bound");

        for (int i = 0; i < p.size(); ++i)
            for (int j = 0; j < p.size(); ++j) {
                if (i == j) continue;
                if (!leq_tol(gap_prime / 3.0 * p.d_to_base(i), p.d(i, j), 1e-9))
                    note_violation(r, "derived gap does not force expansiveness");
            }
    }
    return r;
}

CheckResult check_witness_grid_agreement(uint64_t seed, int spaces) {
    CheckResult r;
    r.name = "witness_grid_agreement";
    Rng rng(seed);
    for (int s = 0; s < spaces; ++s) {
        const int n = rng.uniform_int(2, 20);
        const PointedSpace p = make_pointed(random_metric(rng, n, 1.0), rng.uniform_int(0, n - 1));
        const double eps = rng.coin() ? 0.0 : rng.uniform(0.05, 0.8);
        ++r.cases;
        const CandidateWitness w = least_witness_constant(p, eps);

        const double step = std::max(separation_gap(p.space) / 10.0, 1e-4);
        auto admissible = [&](double C) {
            for (int i = 0; i < p.size(); ++i) {
                if (p.d_to_base(i) < C) continue;
                for (int j = 0; j < p.size(); ++j)
                    if (j != i && p.d(i, j) < p.d_to_base(i) / C && !(p.d(i, j) < eps)) return false;
            }
            return true;
        };
        double grid_value = std::numeric_limits<double>::quiet_NaN();
        for (double c = 1.0; c <= p.space.max_distance() + 1.0 + step; c += step)
            if (admissible(c)) {
                grid_value = c;
                break;
            }
        if (std::isnan(grid_value)) {
            note_violation(r, "grid search found no admissible constant");
            continue;
        }
        if (!(grid_value >= w.value - 1e-9) || !(grid_value <= w.value + step + 1e-9))
            note_violation(r, "grid search disagrees with the candidate search");

        // Antitone in eps: a larger conclusion threshold never needs a
        // larger constant.
        if (eps > 0.0) {
            const CandidateWitness wider = least_witness_constant(p, eps * 1.5);
            if (wider.value > w.value + 1e-12) note_violation(r, "witness is not antitone in eps");
        }
    }
    return r;
}

std::vector<CheckResult> run_verify_suite(uint64_t seed, int trials) {
    std::vector<CheckResult> out;
    out.push_back(check_metric_transforms(seed + 1, trials));
    out.push_back(check_dprime_oracle_gate(seed + 2, trials));
    out.push_back(check_dprime_bounds(seed + 3, trials));
    out.push_back(check_scale_iso_constants(seed + 4, trials));
    out.push_back(check_net_certification(seed + 5, std::max(1, trials / 2)));
    out.push_back(check_extension_operators(seed + 6, trials));
    out.push_back(check_territory_agreement(seed + 7, std::max(1, trials / 4)));
    out.push_back(check_family_trends());
    out.push_back(check_operator_roundtrips(seed + 8, trials, 100));
    out.push_back(check_axiom_suite());
    out.push_back(check_separation_crosscheck(seed + 9, trials));
    out.push_back(check_witness_grid_agreement(seed + 10, std::max(1, trials / 8)));
    return out;
}

}  // namespace lipkit
