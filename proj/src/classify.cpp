#include "lipkit/classify.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>

namespace lipkit {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double separation_gap(const MetricSpace& m) {
    if (m.size() < 2) return kInf;
    double gap = kInf;
    for (int i = 0; i < m.size(); ++i)
        for (int j = i + 1; j < m.size(); ++j) gap = std::min(gap, m.d(i, j));
    return gap;
}

std::vector<int> x_epsilon(const MetricSpace& m, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    std::vector<int> out;
    for (int i = 0; i < m.size(); ++i) {
        double nearest = kInf;
        for (int j = 0; j < m.size(); ++j)
            if (j != i) nearest = std::min(nearest, m.d(i, j));
        if (nearest > eps) out.push_back(i);
    }
    return out;
}

bool witness_is_vacuous(const PointedSpace& p, double C) {
    // Vacuous when the constant exceeds every distance to the base point,
    // so no point is "far" and the hypothesis never fires.
    double max_de = 0.0;
    for (int i = 0; i < p.size(); ++i) max_de = std::max(max_de, p.d_to_base(i));
    return C > max_de;
}

bool witness_admissible(const PointedSpace& p, double C, double conclusion_eps) {
    for (int i = 0; i < p.size(); ++i) {
        if (p.d_to_base(i) < C) continue;
        for (int j = 0; j < p.size(); ++j) {
            if (j == i) continue;
            if (p.d(i, j) < p.d_to_base(i) / C && !(p.d(i, j) < conclusion_eps)) return false;
        }
    }
    return true;
}

CandidateWitness least_witness_constant(const PointedSpace& p, double conclusion_eps) {
    // Bad ordered pairs are those whose conclusion d(p,q) < eps fails; the
    // hypothesis must be blocked there, roughly C > d(p,e) or
    // C >= d(p,e)/d(p,q). Those boundary values seed the candidate set,
    // while admissibility itself is always evaluated in the definitional
    // form, so the returned constant certifies under the same arithmetic.
    struct Bad {
        double de;
        double ratio;
    };
    std::vector<Bad> bad;
    double max_de = 0.0;
    for (int i = 0; i < p.size(); ++i) {
        const double de = p.d_to_base(i);
        max_de = std::max(max_de, de);
        if (de <= 0.0) continue;  // the base point never fires the hypothesis
        for (int j = 0; j < p.size(); ++j) {
            if (j == i) continue;
            const double dij = p.d(i, j);
            if (dij < conclusion_eps) continue;
            bad.push_back({de, de / dij});
        }
    }

    CandidateWitness out;
    auto admissible = [&](double C) { return witness_admissible(p, C, conclusion_eps); };

    if (bad.empty()) {
        out.value = 1.0;
        out.attained = true;
        out.vacuous = witness_is_vacuous(p, 1.0);
        return out;
    }

    std::set<double> cand{1.0, max_de + 1.0};
    for (const Bad& b : bad) {
        if (b.de >= 1.0) cand.insert(b.de);
        if (b.ratio >= 1.0) cand.insert(b.ratio);
    }
    std::vector<double> candidates(cand.begin(), cand.end());

    // Admissibility is monotone along the sorted candidates.
    size_t lo = 0, hi = candidates.size() - 1;
    if (!admissible(candidates[hi]))
        throw std::logic_error("no admissible witness constant up to max d(.,e) + 1");
    if (admissible(candidates[lo])) {
        hi = lo;
    } else {
        while (lo + 1 < hi) {
            const size_t mid = (lo + hi) / 2;
            if (admissible(candidates[mid]))
                hi = mid;
            else
                lo = mid;
        }
    }

    const double first_valid = candidates[hi];
    if (hi == 0) {
        out.value = first_valid;
        out.attained = true;
    } else {
        // The infimum is either the first admissible candidate or the open
        // bound just below it; probe between the two.
        const double below = candidates[hi - 1];
        const double mid = below + (first_valid - below) / 2.0;
        if (mid > below && mid < first_valid && admissible(mid)) {
            const double nudged = below * (1.0 + 1e-9);
            out.value = (nudged > below && nudged < first_valid && admissible(nudged)) ? nudged : mid;
            out.attained = false;
        } else {
            out.value = first_valid;
            out.attained = true;
        }
    }
    out.vacuous = witness_is_vacuous(p, out.value);
    return out;
}

WitnessReport expansive_witness(const PointedSpace& p) {
    WitnessReport rep;
    rep.property = "expansive";
    double c = kInf;
    std::pair<int, int> arg{-1, -1};
    for (int i = 0; i < p.size(); ++i) {
        if (i == p.base || p.d_to_base(i) <= 0.0) continue;
        for (int j = 0; j < p.size(); ++j) {
            if (j == i) continue;
            const double ratio = p.d(i, j) / p.d_to_base(i);
            if (ratio < c) {
                c = ratio;
                arg = {i, j};
            }
        }
    }
    rep.verdict = "holds";
    rep.witness = c;
    rep.witness_attained = arg.first >= 0;
    rep.note = "base point is isolated (finite space); witness magnitude is the signal";
    if (arg.first >= 0)
        rep.counterexample = {p.space.labels[static_cast<size_t>(arg.first)],
                              p.space.labels[static_cast<size_t>(arg.second)]};
    return rep;
}

WitnessReport expansive_at_inf_witness(const PointedSpace& p) {
    WitnessReport rep;
    rep.property = "expansive_at_inf";
    const CandidateWitness w = least_witness_constant(p, 0.0);
    rep.witness = w.value;
    rep.witness_attained = w.attained;
    rep.witness_vacuous = w.vacuous;
    rep.verdict = w.vacuous ? "vacuous" : "holds";
    return rep;
}

WitnessReport almost_expansive_witness(const PointedSpace& p, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    WitnessReport rep;
    rep.property = "almost_expansive";
    const CandidateWitness w = least_witness_constant(p, eps);
    rep.witness = w.value;
    rep.witness_attained = w.attained;
    rep.witness_vacuous = w.vacuous;
    rep.verdict = w.vacuous ? "vacuous" : "holds";
    return rep;
}

TerritoryDecomposition ofarrell_decompose(const MetricSpace& m, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    const int n = m.size();
    TerritoryDecomposition out;
    out.epsilon = eps;
    out.component_of.assign(static_cast<size_t>(n), -1);

    // BFS over the threshold graph; hop counts give s_eps.
    std::vector<int> hop(static_cast<size_t>(n), -1);
    for (int start = 0; start < n; ++start) {
        if (out.component_of[static_cast<size_t>(start)] != -1) continue;
        const int comp = out.component_count++;
        std::deque<int> queue{start};
        out.component_of[static_cast<size_t>(start)] = comp;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int v = 0; v < n; ++v) {
                if (v == u || out.component_of[static_cast<size_t>(v)] != -1) continue;
                if (m.d(u, v) <= eps) {
                    out.component_of[static_cast<size_t>(v)] = comp;
                    queue.push_back(v);
                }
            }
        }
    }

    out.step_diameter.assign(static_cast<size_t>(out.component_count), 0);
    out.step_bounded.assign(static_cast<size_t>(out.component_count), true);
    for (int start = 0; start < n; ++start) {
        std::fill(hop.begin(), hop.end(), -1);
        hop[static_cast<size_t>(start)] = 0;
        std::deque<int> queue{start};
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int v = 0; v < n; ++v) {
                if (v == u || hop[static_cast<size_t>(v)] != -1) continue;
                if (m.d(u, v) <= eps) {
                    hop[static_cast<size_t>(v)] = hop[static_cast<size_t>(u)] + 1;
                    queue.push_back(v);
                }
            }
        }
        const int comp = out.component_of[static_cast<size_t>(start)];
        for (int v = 0; v < n; ++v)
            if (hop[static_cast<size_t>(v)] > out.step_diameter[static_cast<size_t>(comp)])
                out.step_diameter[static_cast<size_t>(comp)] = hop[static_cast<size_t>(v)];
    }
    return out;
}

ProximalProfile proximal_profile(const MetricSpace& m, const std::vector<double>& eps_grid) {
    if (eps_grid.empty()) throw std::invalid_argument("eps grid is empty");
    ProximalProfile out;
    for (double eps : eps_grid) {
        const auto sep = x_epsilon(m, eps);
        out.rows.push_back({eps, static_cast<int>(sep.size()),
                            m.size() - static_cast<int>(sep.size())});
    }
    return out;
}

PointedSpace family_sample(const HorizonFamily& f, int horizon) {
    if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
    std::vector<double> xs;
    if (f.name == "geometric") {
        if (!(f.param > 1.0)) throw std::invalid_argument("geometric family needs b > 1");
        for (int n = 1; n <= horizon; ++n) xs.push_back(std::pow(f.param, n));
    } else if (f.name == "doubled") {
        if (!(f.param > 1.0)) throw std::invalid_argument("doubled family needs b > 1");
        for (int n = 1; n <= horizon; ++n) {
            xs.push_back(std::pow(f.param, n));
            xs.push_back(std::pow(f.param, n) + 1.0 / n);
        }
    } else if (f.name == "arithmetic") {
        if (!(f.param > 0.0)) throw std::invalid_argument("arithmetic family needs a > 0");
        for (int n = 1; n <= horizon; ++n) xs.push_back(f.param * n);
    } else if (f.name == "harmonic") {
        xs.push_back(0.0);
        for (int n = 1; n <= horizon; ++n) xs.push_back(1.0 / n);
    } else if (f.name == "file") {
        if (f.file_points.empty()) throw std::invalid_argument("file-backed family has no points");
        const int take = std::min<int>(horizon, static_cast<int>(f.file_points.size()));
        xs.assign(f.file_points.begin(), f.file_points.begin() + take);
    } else {
        throw std::invalid_argument("unknown family: " + f.name);
    }
    MetricSpace m = metric_from_line(xs);
    const int base = f.base_index;
    if (base < 0 || base >= m.size()) throw std::invalid_argument("family base index out of range");
    return make_pointed(std::move(m), base);
}

TrendReport family_trend(const HorizonFamily& f, const std::string& property,
                         const std::vector<int>& horizons, const TrendParams& params) {
    if (horizons.empty()) throw std::invalid_argument("horizons are empty");
    for (size_t i = 1; i < horizons.size(); ++i)
        if (horizons[i] <= horizons[i - 1])
            throw std::invalid_argument("horizons must be strictly increasing");

    TrendReport out;
    out.property = property;
    std::vector<double> tracked;
    for (int h : horizons) {
        const PointedSpace sample = family_sample(f, h);
        WitnessReport rep;
        if (property == "expansive_at_inf") {
            rep = expansive_at_inf_witness(sample);
        } else if (property == "almost_expansive") {
            rep = almost_expansive_witness(sample, params.epsilon);
        } else if (property == "separation_gap") {
            rep.property = property;
            rep.verdict = "holds";
            rep.witness = separation_gap(sample.space);
        } else if (property == "ofarrell") {
            rep.property = property;
            rep.verdict = "holds";
            rep.witness = static_cast<double>(ofarrell_decompose(sample.space, params.epsilon).component_count);
        } else if (property == "x_epsilon") {
            rep.property = property;
            rep.verdict = "holds";
            rep.witness =
                static_cast<double>(sample.size() - static_cast<int>(x_epsilon(sample.space, params.epsilon).size()));
        } else {
            throw std::invalid_argument("unknown property: " + property);
        }
        rep.horizon = h;
        tracked.push_back(rep.witness.value_or(0.0));
        out.per_horizon.push_back(std::move(rep));
    }

    bool diverging = tracked.size() > 1;
    for (size_t i = 1; i < tracked.size(); ++i)
        if (!(tracked[i] >= params.growth_factor * tracked[i - 1])) diverging = false;
    out.verdict = diverging ? "diverging" : "stable";
    return out;
}

}  // namespace lipkit
