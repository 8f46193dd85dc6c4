#include "lipkit/order_iso.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "lipkit/random.hpp"

namespace lipkit {

double MonotoneMap::operator()(double t) const {
    if (t <= breakpoints.front()) return values.front() + left_slope * (t - breakpoints.front());
    if (t >= breakpoints.back()) return values.back() + right_slope * (t - breakpoints.back());
    const size_t hi = static_cast<size_t>(
        std::upper_bound(breakpoints.begin(), breakpoints.end(), t) - breakpoints.begin());
    const size_t lo = hi - 1;
    const double w = (t - breakpoints[lo]) / (breakpoints[hi] - breakpoints[lo]);
    return values[lo] + w * (values[hi] - values[lo]);
}

MonotoneMap MonotoneMap::inverse() const {
    return MonotoneMap{values, breakpoints, 1.0 / left_slope, 1.0 / right_slope};
}

void MonotoneMap::validate() const {
    if (breakpoints.empty() || breakpoints.size() != values.size())
        throw std::invalid_argument("monotone map needs matching nonempty breakpoints and values");
    for (size_t i = 1; i < breakpoints.size(); ++i) {
        if (!(breakpoints[i] > breakpoints[i - 1]))
            throw std::invalid_argument("breakpoints must be strictly increasing");
        if (!(values[i] > values[i - 1]))
            throw std::invalid_argument("values must be strictly increasing");
    }
    if (!(left_slope > 0.0) || !(right_slope > 0.0))
        throw std::invalid_argument("end slopes must be positive");
}

void CompositionOperator::validate() const {
    const int n = size();
    if (static_cast<int>(maps.size()) != n)
        throw std::invalid_argument("operator needs one map per point");
    std::vector<bool> hit(static_cast<size_t>(n), false);
    for (int v : phi) {
        if (v < 0 || v >= n || hit[static_cast<size_t>(v)])
            throw std::invalid_argument("phi is not a bijection");
        hit[static_cast<size_t>(v)] = true;
    }
    for (const MonotoneMap& m : maps) m.validate();
}

std::vector<int> CompositionOperator::phi_inverse() const {
    std::vector<int> inv(phi.size(), -1);
    for (int x = 0; x < size(); ++x) inv[static_cast<size_t>(phi[static_cast<size_t>(x)])] = x;
    return inv;
}

ScalarField apply_operator(const CompositionOperator& t, const ScalarField& f) {
    if (f.size() != t.size()) throw std::invalid_argument("field is not aligned with the operator");
    const std::vector<int> inv = t.phi_inverse();
    ScalarField out(static_cast<size_t>(t.size()), 0.0);
    for (int y = 0; y < t.size(); ++y)
        out[y] = t.maps[static_cast<size_t>(y)](f[inv[static_cast<size_t>(y)]]);
    return out;
}

CompositionOperator invert_operator(const CompositionOperator& t) {
    CompositionOperator inv;
    inv.phi = t.phi_inverse();
    inv.maps.resize(t.maps.size());
    // The inverse carries map Psi(x,.) = maps[phi(x)]^{-1} at each X-point.
    for (int x = 0; x < t.size(); ++x)
        inv.maps[static_cast<size_t>(x)] = t.maps[static_cast<size_t>(t.phi[static_cast<size_t>(x)])].inverse();
    return inv;
}

FactorResult factor_operator(const FieldOracle& oracle, int n_points,
                             const std::vector<double>& probe_grid) {
    FactorResult result;
    if (n_points < 1) {
        result.inconsistency = "empty point set";
        return result;
    }
    if (probe_grid.size() < 2) {
        result.inconsistency = "probe grid needs at least two points";
        return result;
    }
    std::vector<double> grid = probe_grid;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    // Constant probes give each map on the grid: Phi(y, t) = (T t)(y).
    std::vector<ScalarField> const_out;
    for (double t : grid) {
        ScalarField f(static_cast<size_t>(n_points), t);
        ScalarField out = oracle(f);
        if (out.size() != n_points) {
            result.inconsistency = "oracle changed the point count";
            return result;
        }
        const_out.push_back(std::move(out));
    }

    // A single-point perturbation of a constant field moves exactly the
    // image coordinate of a weighted composition.
    const double base = grid.front();
    const double raised = grid.back();
    std::vector<int> phi(static_cast<size_t>(n_points), -1);
    std::vector<bool> hit(static_cast<size_t>(n_points), false);
    for (int x = 0; x < n_points; ++x) {
        ScalarField f(static_cast<size_t>(n_points), base);
        f[x] = raised;
        const ScalarField out = oracle(f);
        int moved = -1;
        int moved_count = 0;
        for (int y = 0; y < n_points; ++y)
            if (out[y] != const_out.front()[y]) {
                moved = y;
                ++moved_count;
            }
        if (moved_count != 1) {
            result.inconsistency = "perturbation at point " + std::to_string(x) + " moved " +
                                   std::to_string(moved_count) + " outputs";
            return result;
        }
        if (hit[static_cast<size_t>(moved)]) {
            result.inconsistency = "two perturbations moved the same output " + std::to_string(moved);
            return result;
        }
        phi[static_cast<size_t>(x)] = moved;
        hit[static_cast<size_t>(moved)] = true;
    }

    CompositionOperator op;
    op.phi = phi;
    op.maps.resize(static_cast<size_t>(n_points));
    for (int y = 0; y < n_points; ++y) {
        MonotoneMap map;
        map.breakpoints = grid;
        for (size_t t = 0; t < grid.size(); ++t) map.values.push_back(const_out[t][y]);
        for (size_t t = 1; t < grid.size(); ++t)
            if (!(map.values[t] > map.values[t - 1])) {
                result.inconsistency =
                    "constant probes are not strictly increasing at output " + std::to_string(y);
                return result;
            }
        map.left_slope = (map.values[1] - map.values[0]) / (grid[1] - grid[0]);
        map.right_slope = (map.values[grid.size() - 1] - map.values[grid.size() - 2]) /
                          (grid[grid.size() - 1] - grid[grid.size() - 2]);
        op.maps[static_cast<size_t>(y)] = std::move(map);
    }

    // Replay every probe through the recovered operator.
    for (size_t t = 0; t < grid.size(); ++t) {
        const ScalarField replay = apply_operator(op, ScalarField(static_cast<size_t>(n_points), grid[t]));
        for (int y = 0; y < n_points; ++y)
            if (std::abs(replay[y] - const_out[t][y]) > 1e-9 * (1.0 + std::abs(const_out[t][y]))) {
                result.inconsistency = "recovered operator disagrees with a constant probe";
                return result;
            }
    }
    for (int x = 0; x < n_points; ++x) {
        ScalarField f(static_cast<size_t>(n_points), base);
        f[x] = raised;
        const ScalarField expect = oracle(f);
        const ScalarField replay = apply_operator(op, f);
        for (int y = 0; y < n_points; ++y)
            if (std::abs(replay[y] - expect[y]) > 1e-9 * (1.0 + std::abs(expect[y]))) {
                result.inconsistency = "recovered operator disagrees with a perturbation probe";
                return result;
            }
    }
    result.op = std::move(op);
    return result;
}

OrderIsoVerdict check_order_iso(const FieldOracle& oracle, int n_points, int trials, uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    OrderIsoVerdict verdict;
    verdict.trials = trials;
    Rng rng(seed);
    auto leq = [n_points](const ScalarField& a, const ScalarField& b) {
        for (int i = 0; i < n_points; ++i)
            if (a[i] > b[i]) return false;
        return true;
    };
    for (int t = 0; t < trials; ++t) {
        ScalarField f = random_field(rng, n_points, 5.0);
        // Ordered pair: f <= g must transfer.
        ScalarField g = f;
        for (int i = 0; i < n_points; ++i) g[i] += 5.0 * rng.uniform();
        ScalarField tf = oracle(f);
        ScalarField tg = oracle(g);
        if (!leq(tf, tg)) {
            verdict.pass = false;
            verdict.failure = "ordered pair mapped to a non-ordered pair";
            verdict.counterexample = {f, g};
            return verdict;
        }
        // Incomparable pair: order must be reflected, so the images may not
        // become comparable.
        if (n_points >= 2) {
            ScalarField h = f;
            const int up = rng.uniform_int(0, n_points - 1);
            int down = rng.uniform_int(0, n_points - 2);
            if (down >= up) ++down;
            h[up] += 1.0 + rng.uniform();
            h[down] -= 1.0 + rng.uniform();
            const ScalarField th = oracle(h);
            if (leq(tf, th) || leq(th, tf)) {
                verdict.pass = false;
                verdict.failure = "incomparable pair became comparable";
                verdict.counterexample = {f, h};
                return verdict;
            }
        }
    }
    return verdict;
}

namespace {

bool leq_all(const ScalarField& a, const ScalarField& b) {
    for (size_t i = 0; i < a.values.size(); ++i)
        if (a.values[i] > b.values[i]) return false;
    return true;
}

std::string field_str(const ScalarField& f) {
    std::string s = "(";
    for (int i = 0; i < f.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(f[i]);
    }
    return s + ")";
}

}  // namespace

LatticeAxiomReport check_lattice_axioms(const FunctionFamily& family) {
    LatticeAxiomReport rep;
    rep.a1.axiom = "A1";
    rep.a2.axiom = "A2";
    rep.a3.axiom = "A3";
    rep.compatible.axiom = "compatible";
    rep.directed.axiom = "directed";
    const int n = family.n_points;
    const auto& A = family.members;
    if (A.empty()) {
        rep.a1.pass = false;
        rep.a1.detail = "empty family has no strict pair";
        return rep;
    }
    for (const ScalarField& f : A)
        if (f.size() != n) throw std::invalid_argument("family member is not aligned with the space");

    auto contains = [&](const ScalarField& target) {
        for (const ScalarField& f : A)
            if (f.values == target.values) return true;
        return false;
    };

    // A1: every point sits where some comparable pair separates strictly.
    for (int x = 0; x < n && rep.a1.pass; ++x) {
        bool found = false;
        for (size_t i = 0; i < A.size() && !found; ++i)
            for (size_t j = 0; j < A.size() && !found; ++j)
                if (leq_all(A[i], A[j]) && A[i][x] < A[j][x]) found = true;
        if (!found) {
            rep.a1.pass = false;
            rep.a1.detail = "no strict comparable pair at point " + std::to_string(x);
        }
    }

    // A2 with the discrete topology: a witness for U = {x} serves every
    // open U containing x, so only the singleton case needs checking.
    // u must rise strictly at x and agree with f elsewhere; dually v must
    // drop strictly at x and agree with g elsewhere.
    for (size_t i = 0; i < A.size() && rep.a2.pass; ++i)
        for (size_t j = 0; j < A.size() && rep.a2.pass; ++j) {
            if (!leq_all(A[i], A[j])) continue;
            for (int x = 0; x < n && rep.a2.pass; ++x) {
                if (!(A[i][x] < A[j][x])) continue;
                bool up = false, down = false;
                for (const ScalarField& u : A) {
                    if (!up && u[x] > A[i][x]) {
                        bool match = true;
                        for (int y = 0; y < n && match; ++y)
                            if (y != x && u[y] != A[i][y]) match = false;
                        up = match;
                    }
                    if (!down && u[x] < A[j][x]) {
                        bool match = true;
                        for (int y = 0; y < n && match; ++y)
                            if (y != x && u[y] != A[j][y]) match = false;
                        down = match;
                    }
                    if (up && down) break;
                }
                if (!up || !down) {
                    rep.a2.pass = false;
                    rep.a2.detail = std::string(!up ? "no upward" : "no downward") +
                                    " singleton witness at point " + std::to_string(x) + " for pair " +
                                    field_str(A[i]) + " <= " + field_str(A[j]);
                }
            }
        }

    // A3 in both orientations.
    for (size_t hi = 0; hi < A.size() && rep.a3.pass; ++hi)
        for (size_t fi = 0; fi < A.size() && rep.a3.pass; ++fi) {
            if (!leq_all(A[hi], A[fi])) continue;
            for (size_t gi = 0; gi < A.size() && rep.a3.pass; ++gi) {
                if (!leq_all(A[hi], A[gi])) continue;
                for (int x = 0; x < n && rep.a3.pass; ++x) {
                    if (!(A[hi][x] < A[fi][x] && A[hi][x] < A[gi][x])) continue;
                    bool found = false;
                    for (const ScalarField& u : A)
                        if (leq_all(A[hi], u) && leq_all(u, A[fi]) && leq_all(u, A[gi]) &&
                            u[x] > A[hi][x]) {
                            found = true;
                            break;
                        }
                    if (!found) {
                        rep.a3.pass = false;
                        rep.a3.detail = "no intermediate witness above " + field_str(A[hi]) +
                                        " at point " + std::to_string(x);
                    }
                }
            }
        }
    for (size_t hi = 0; hi < A.size() && rep.a3.pass; ++hi)
        for (size_t fi = 0; fi < A.size() && rep.a3.pass; ++fi) {
            if (!leq_all(A[fi], A[hi])) continue;
            for (size_t gi = 0; gi < A.size() && rep.a3.pass; ++gi) {
                if (!leq_all(A[gi], A[hi])) continue;
                for (int x = 0; x < n && rep.a3.pass; ++x) {
                    if (!(A[hi][x] > A[fi][x] && A[hi][x] > A[gi][x])) continue;
                    bool found = false;
                    for (const ScalarField& u : A)
                        if (leq_all(u, A[hi]) && leq_all(A[fi], u) && leq_all(A[gi], u) &&
                            u[x] < A[hi][x]) {
                            found = true;
                            break;
                        }
                    if (!found) {
                        rep.a3.pass = false;
                        rep.a3.detail = "no intermediate witness below " + field_str(A[hi]) +
                                        " at point " + std::to_string(x);
                    }
                }
            }
        }

    // Compatibility: the closed-set quantifier collapses to A = X \ {x},
    // whose witnesses are fully determined mixtures of f and g.
    for (size_t i = 0; i < A.size() && rep.compatible.pass; ++i)
        for (size_t j = 0; j < A.size() && rep.compatible.pass; ++j) {
            if (!leq_all(A[i], A[j])) continue;
            for (int x = 0; x < n && rep.compatible.pass; ++x) {
                if (!(A[i][x] < A[j][x])) continue;
                ScalarField u = A[j];
                u[x] = A[i][x];
                ScalarField v = A[i];
                v[x] = A[j][x];
                if (!contains(u) || !contains(v)) {
                    rep.compatible.pass = false;
                    rep.compatible.detail = "missing mixture of " + field_str(A[i]) + " and " +
                                            field_str(A[j]) + " pinned at point " + std::to_string(x);
                }
            }
        }

    // Directedness: common lower and upper bounds inside the family.
    for (size_t i = 0; i < A.size() && rep.directed.pass; ++i)
        for (size_t j = 0; j < A.size() && rep.directed.pass; ++j) {
            bool lower = false, upper = false;
            for (const ScalarField& h : A) {
                lower = lower || (leq_all(h, A[i]) && leq_all(h, A[j]));
                upper = upper || (leq_all(A[i], h) && leq_all(A[j], h));
                if (lower && upper) break;
            }
            if (!lower || !upper) {
                rep.directed.pass = false;
                rep.directed.detail = std::string(!lower ? "no common lower bound" : "no common upper bound") +
                                      " for " + field_str(A[i]) + " and " + field_str(A[j]);
            }
        }

    return rep;
}

FunctionFamily grid_family(int n_points, const std::vector<double>& grid) {
    FunctionFamily fam;
    fam.n_points = n_points;
    std::vector<size_t> idx(static_cast<size_t>(n_points), 0);
    while (true) {
        ScalarField f(static_cast<size_t>(n_points), 0.0);
        for (int i = 0; i < n_points; ++i) f[i] = grid[idx[static_cast<size_t>(i)]];
        fam.members.push_back(std::move(f));
        int pos = 0;
        while (pos < n_points) {
            if (++idx[static_cast<size_t>(pos)] < grid.size()) break;
            idx[static_cast<size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == n_points) break;
    }
    return fam;
}

ScalarField truncation_witness(const ScalarField& f, double a, double b, double c, double d) {
    if (!(a < d) || !(a <= b) || !(b <= c) || !(c <= d))
        throw std::invalid_argument("bands must satisfy a <= b <= c <= d with a < d");
    ScalarField g = f;
    for (double& v : g.values) v = std::min(std::max(v, a), d);
    return g;
}

}  // namespace lipkit
