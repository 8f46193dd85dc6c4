#include "lipkit/derived.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "lipkit/classify.hpp"
#include "lipkit/lipschitz.hpp"

namespace lipkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string label_pair(const MetricSpace& m, int i, int j) {
    return "(" + m.labels[static_cast<size_t>(i)] + ", " + m.labels[static_cast<size_t>(j)] + ")";
}

}  // namespace

SymMatrix rho_matrix(const PointedSpace& p) {
    const ScalarField xi = base_weight(p);
    SymMatrix rho(p.size());
    for (int i = 0; i < p.size(); ++i)
        for (int j = i + 1; j < p.size(); ++j) {
            const double v = p.d(i, j) / std::max(xi[i], xi[j]);
            rho.at(i, j) = v;
            rho.at(j, i) = v;
        }
    return rho;
}

double dprime_pair_oracle(const PointedSpace& p, int i, int j) {
    if (i == j) throw std::invalid_argument("derived-metric oracle needs distinct points");
    const ScalarField xi = base_weight(p);
    const double d_pe = p.d_to_base(i);
    const double d_qe = p.d_to_base(j);
    const double d_pq = p.d(i, j);

    // Three variables (f(e), f(p), f(q)), eight one-sided constraints.
    // Coefficients are 0/+-1, so nonsingular 3x3 minors have |det| >= 1.
    const double A[8][3] = {
        {1, 0, 0}, {-1, 0, 0},          // |f(e)| <= 1
        {-1, 1, 0}, {1, -1, 0},         // |f(p) - f(e)| <= d(p,e)
        {-1, 0, 1}, {1, 0, -1},         // |f(q) - f(e)| <= d(q,e)
        {0, 1, -1}, {0, -1, 1},         // |f(p) - f(q)| <= d(p,q)
    };
    const double b[8] = {1, 1, d_pe, d_pe, d_qe, d_qe, d_pq, d_pq};
    const double cp = 1.0 / xi[i];
    const double cq = 1.0 / xi[j];

    double best = -kInf;
    for (int r = 0; r < 8; ++r)
        for (int s = r + 1; s < 8; ++s)
            for (int t = s + 1; t < 8; ++t) {
                const double* rows[3] = {A[r], A[s], A[t]};
                const double rhs[3] = {b[r], b[s], b[t]};
                const double det = rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1]) -
                                   rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0]) +
                                   rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0]);
                if (std::abs(det) < 0.5) continue;
                double x[3];
                for (int col = 0; col < 3; ++col) {
                    double m[3][3];
                    for (int rr = 0; rr < 3; ++rr)
                        for (int cc = 0; cc < 3; ++cc) m[rr][cc] = rows[rr][cc];
                    for (int rr = 0; rr < 3; ++rr) m[rr][col] = rhs[rr];
                    const double dc = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                                      m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                                      m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
                    x[col] = dc / det;
                }
                bool feasible = true;
                for (int c = 0; c < 8 && feasible; ++c) {
                    const double lhs = A[c][0] * x[0] + A[c][1] * x[1] + A[c][2] * x[2];
                    if (lhs > b[c] + 1e-9 * (1.0 + std::abs(b[c]))) feasible = false;
                }
                if (!feasible) continue;
                best = std::max(best, cp * x[1] - cq * x[2]);
            }
    return best;
}

double dprime_pair_closed_form(const PointedSpace& p, int i, int j) {
    if (i == j) return 0.0;
    const double xi_i = std::max(p.d_to_base(i), 1.0);
    const double xi_j = std::max(p.d_to_base(j), 1.0);
    const int small = xi_i <= xi_j ? i : j;
    const double lo = std::min(xi_i, xi_j);
    const double hi = std::max(xi_i, xi_j);
    return p.d(i, j) / hi + (1.0 / lo - 1.0 / hi) * (p.d_to_base(small) + 1.0);
}

MetricSpace dprime_matrix(const PointedSpace& p) {
    MetricSpace out;
    out.labels = p.space.labels;
    out.dist.assign(static_cast<size_t>(p.size()) * p.size(), 0.0);
    for (int i = 0; i < p.size(); ++i)
        for (int j = i + 1; j < p.size(); ++j) {
            const double v = dprime_pair_closed_form(p, i, j);
            out.d(i, j) = v;
            out.d(j, i) = v;
        }
    return out;
}

AEConstants ae_constants(const PointedSpace& p, int k_max) {
    if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
    AEConstants out;
    out.C.reserve(static_cast<size_t>(k_max));
    double prev = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        CandidateWitness w = least_witness_constant(p, 1.0 / (k + 2));
        double c = w.value;
        bool attained = w.attained;
        if (c <= prev) {
            // The per-level infima are nondecreasing; enforce the strict
            // increase the construction asks for.
            c = prev * (1.0 + 1e-9);
            attained = true;  // strictly above the level-k infimum
        }
        out.C.push_back(c);
        out.attained.push_back(attained);
        out.vacuous.push_back(witness_is_vacuous(p, c));
        prev = c;
    }
    return out;
}

AECertification certify_ae_constants(const PointedSpace& p, const AEConstants& a) {
    AECertification cert;
    for (int k = 1; k <= a.k_max(); ++k) {
        const double C = a.C[static_cast<size_t>(k - 1)];
        if (!(C >= 1.0) || (k >= 2 && !(C > a.C[static_cast<size_t>(k - 2)]))) {
            cert = {false, k, -1, -1};
            return cert;
        }
        for (int i = 0; i < p.size(); ++i) {
            if (p.d_to_base(i) < C) continue;
            for (int j = 0; j < p.size(); ++j) {
                if (j == i) continue;
                if (p.d(i, j) < p.d_to_base(i) / C && !(p.d(i, j) < 1.0 / (k + 2))) {
                    cert = {false, k, i, j};
                    return cert;
                }
            }
        }
    }
    return cert;
}

namespace {

NetCheck check_far_annulus_empty(const PointedSpace& p, const AEConstants& a) {
    NetCheck chk{"far_annulus_empty", true, true, -1, -1, kInf};
    const double C1 = a.C[0];
    for (int i = 0; i < p.size(); ++i) {
        for (int k = 1; k <= a.k_max(); ++k) {
            const double Ck = a.C[static_cast<size_t>(k - 1)];
            if (p.d_to_base(i) < Ck) continue;
            chk.vacuous = false;
            const double inner = 1.0 / (k + 2);
            const double outer = p.d_to_base(i) / C1;
            for (int j = 0; j < p.size(); ++j) {
                if (j == i) continue;
                const double dij = p.d(i, j);
                // Distance from the open band (inner, outer); negative
                // inside the band.
                const double margin = std::max(inner - dij, dij - outer);
                if (margin < chk.margin) {
                    chk.margin = margin;
                    chk.i = i;
                    chk.j = j;
                }
            }
        }
    }
    chk.pass = !(chk.margin < 0.0);
    return chk;
}

}  // namespace

NetDecomposition build_net(const PointedSpace& p, const AEConstants& a) {
    if (a.k_max() < 1) throw std::invalid_argument("need at least one certified constant");
    {
        const AECertification cert = certify_ae_constants(p, a);
        if (!cert.certified)
            throw NetCertificationError(
                "constants", cert.p >= 0 ? "level " + std::to_string(cert.k) + " violated at " +
                                               label_pair(p.space, cert.p, cert.q)
                                         : "constants are not >= 1 and strictly increasing");
    }

    NetDecomposition net;
    net.constants = a;
    net.C1 = a.C[0];
    const int n = p.size();
    const ScalarField xi = base_weight(p);

    // Balls are closed throughout: B(x, r) = { z : d(z, x) <= r }.
    std::vector<int> far;
    for (int i = 0; i < n; ++i)
        if (p.d_to_base(i) > net.C1) far.push_back(i);
    std::sort(far.begin(), far.end(), [&](int u, int v) {
        if (p.d_to_base(u) != p.d_to_base(v)) return p.d_to_base(u) > p.d_to_base(v);
        return p.space.labels[static_cast<size_t>(u)] < p.space.labels[static_cast<size_t>(v)];
    });

    for (int cand : far) {
        bool disjoint = true;
        for (int q : net.gamma) {
            for (int z = 0; z < n && disjoint; ++z)
                if (p.d(z, cand) <= 1.0 && p.d(z, q) <= 1.0) disjoint = false;
            if (!disjoint) break;
        }
        if (disjoint) net.gamma.push_back(cand);
    }

    net.assignment.assign(static_cast<size_t>(n), -1);
    for (int z = 0; z < n; ++z) {
        for (size_t g = 0; g < net.gamma.size(); ++g) {
            if (p.d(z, net.gamma[g]) <= 1.0) {
                if (net.assignment[static_cast<size_t>(z)] != -1)
                    throw NetCertificationError("disjoint_balls",
                                                "point " + p.space.labels[static_cast<size_t>(z)] +
                                                    " lies in two admitted balls");
                net.assignment[static_cast<size_t>(z)] = static_cast<int>(g);
            }
        }
    }

    // Coverage of the far region (the packing is maximal).
    NetCheck coverage{"net_covers_far_region", true, far.empty(), -1, -1, kInf};
    for (int z : far) {
        double nearest = kInf;
        for (int g : net.gamma) nearest = std::min(nearest, p.d(z, g));
        const double margin = 1.0 - nearest;
        if (margin < coverage.margin) {
            coverage.margin = margin;
            coverage.i = z;
        }
        if (margin < 0.0) {
            coverage.pass = false;
            throw NetCertificationError("net_covers_far_region",
                                        "far point " + p.space.labels[static_cast<size_t>(z)] +
                                            " lies in no admitted ball");
        }
    }

    net.zeta = ScalarField(static_cast<size_t>(n), 1.0);
    for (int z = 0; z < n; ++z) {
        const int g = net.assignment[static_cast<size_t>(z)];
        if (g >= 0) net.zeta[z] = xi[net.gamma[static_cast<size_t>(g)]];
    }

    net.K = std::max(net.C1, 1.5);
    NetCheck weight{"weight_comparable", true, false, -1, -1, kInf};
    double worst_ratio = 1.0;
    for (int z = 0; z < n; ++z) {
        const double ratio = std::max(xi[z] / net.zeta[z], net.zeta[z] / xi[z]);
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            weight.i = z;
        }
    }
    weight.margin = net.K - worst_ratio;
    if (weight.margin < 0.0) {
        // Guard only; unreachable with certified constants. Fall back to the
        // smallest pointwise-valid K.
        net.K = worst_ratio;
        weight.margin = 0.0;
        net.notes = "weight bound exceeded the default K; substituted the pointwise ratio";
    }

    const NetCheck annulus = check_far_annulus_empty(p, a);
    if (!annulus.pass)
        throw NetCertificationError("far_annulus_empty",
                                    "occupied annulus at " + label_pair(p.space, annulus.i, annulus.j));

    // Pairs split by a ball boundary stay d'-separated.
    const MetricSpace dp = dprime_matrix(p);
    NetCheck gap{"ball_boundary_gap", true, true, -1, -1, kInf};
    const double gap_bound = 2.0 / (3.0 * net.K * net.C1);
    for (int u = 0; u < n; ++u) {
        const int gu = net.assignment[static_cast<size_t>(u)];
        if (gu < 0) continue;
        for (int v = 0; v < n; ++v) {
            if (net.assignment[static_cast<size_t>(v)] == gu) continue;
            gap.vacuous = false;
            const double margin = dp.d(u, v) - gap_bound;
            if (margin < gap.margin) {
                gap.margin = margin;
                gap.i = u;
                gap.j = v;
            }
        }
    }
    if (!gap.vacuous && gap.margin < 0.0)
        throw NetCertificationError("ball_boundary_gap",
                                    "derived distance below bound at " + label_pair(p.space, gap.i, gap.j));

    // Weight ratios are Lipschitz w.r.t. the derived metric; record the
    // realized constants.
    NetCheck ratio_lip{"weight_ratio_lipschitz", true, n < 2, -1, -1, 0.0};
    {
        ScalarField xi_over_zeta(static_cast<size_t>(n), 1.0), zeta_over_xi(static_cast<size_t>(n), 1.0);
        for (int z = 0; z < n; ++z) {
            xi_over_zeta[z] = xi[z] / net.zeta[z];
            zeta_over_xi[z] = net.zeta[z] / xi[z];
        }
        net.lip_xi_over_zeta = lip_constant(dp, xi_over_zeta, 1.0);
        net.lip_zeta_over_xi = lip_constant(dp, zeta_over_xi, 1.0);
        ratio_lip.pass = std::isfinite(net.lip_xi_over_zeta) && std::isfinite(net.lip_zeta_over_xi);
        ratio_lip.margin = std::max(net.lip_xi_over_zeta, net.lip_zeta_over_xi);
        if (!ratio_lip.pass)
            throw NetCertificationError("weight_ratio_lipschitz", "weight ratio seminorm is not finite");
    }

    net.checks = {annulus, coverage, weight, gap, ratio_lip};
    return net;
}

ScalarField scale_iso_lip(const PointedSpace& p, const ScalarField& f, Direction dir) {
    if (f.size() != p.size()) throw std::invalid_argument("field is not aligned with the space");
    const ScalarField xi = base_weight(p);
    ScalarField out(static_cast<size_t>(p.size()), 0.0);
    for (int i = 0; i < p.size(); ++i)
        out[i] = dir == Direction::forward ? f[i] / xi[i] : f[i] * xi[i];
    return out;
}

ScaleIsoCertificate scale_iso_lip_certificate(const PointedSpace& p, const ScalarField& f) {
    ScaleIsoCertificate cert;
    const ScalarField g = scale_iso_lip(p, f, Direction::forward);
    cert.lip_base = lip_constant(p.space, f, 1.0);
    cert.lip_derived = lip_constant(dprime_matrix(p), g, 1.0);
    cert.value_at_base = f[p.base];  // xi(e) = 1, so g(e) = f(e)
    cert.forward_bound = std::max({cert.lip_base, std::abs(cert.value_at_base), 1.0});
    cert.inverse_bound = 7.0 * cert.lip_derived + std::abs(g[p.base]);
    const double tol = 1e-9;
    cert.forward_ok = cert.lip_derived <= cert.forward_bound + tol;
    cert.inverse_ok = cert.lip_base <= cert.inverse_bound + tol;
    return cert;
}

ScalarField scale_iso_littlelip(const PointedSpace& p, const NetDecomposition& net,
                                const ScalarField& f, Direction dir) {
    if (f.size() != p.size()) throw std::invalid_argument("field is not aligned with the space");
    if (net.zeta.size() != p.size()) throw std::invalid_argument("net does not match the space");
    ScalarField out(static_cast<size_t>(p.size()), 0.0);
    for (int i = 0; i < p.size(); ++i)
        out[i] = dir == Direction::forward ? f[i] / net.zeta[i] : f[i] * net.zeta[i];
    return out;
}

ModulusTransferCertificate littlelip_modulus_certificate(const PointedSpace& p,
                                                         const NetDecomposition& net,
                                                         const ScalarField& f, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    ModulusTransferCertificate cert;
    cert.delta = delta;
    for (int k = 1; k <= net.constants.k_max(); ++k)
        if (2.0 / (k + 2) < delta) {
            cert.k = k;
            cert.applicable = true;
            break;
        }
    if (!cert.applicable) return cert;

    for (int i = 0; i < p.size(); ++i)
        for (int j = i + 1; j < p.size(); ++j)
            if (p.d(i, j) < delta)
                cert.epsilon = std::max(cert.epsilon, std::abs(f[i] - f[j]) / p.d(i, j));

    const double Ck = net.constants.C[static_cast<size_t>(cert.k - 1)];
    cert.pair_threshold = std::min(2.0 / (3.0 * net.K * net.C1), delta / (2.0 * Ck));
    cert.factor = std::max(net.C1, 2.0);

    const MetricSpace dp = dprime_matrix(p);
    const ScalarField tf = scale_iso_littlelip(p, net, f, Direction::forward);
    for (int u = 0; u < p.size(); ++u)
        for (int v = u + 1; v < p.size(); ++v) {
            if (!(dp.d(u, v) < cert.pair_threshold)) continue;
            ++cert.pairs_checked;
            const double lhs = std::abs(tf[u] - tf[v]);
            const double rhs = cert.factor * cert.epsilon * dp.d(u, v);
            const double ratio = cert.epsilon > 0.0 ? lhs / (cert.epsilon * dp.d(u, v))
                                                    : (lhs > 0.0 ? kInf : 0.0);
            if (ratio > cert.max_ratio) {
                cert.max_ratio = ratio;
                cert.worst_u = u;
                cert.worst_v = v;
            }
            if (lhs > rhs + 1e-9 * (1.0 + rhs)) cert.pass = false;
        }
    return cert;
}

namespace {

void check_bijection(const PointedSpace& x, const PointedSpace& y, const std::vector<int>& phi) {
    if (x.size() != y.size() || static_cast<int>(phi.size()) != x.size())
        throw std::invalid_argument("phi is not a bijection between the point sets");
    std::vector<bool> hit(static_cast<size_t>(y.size()), false);
    for (int v : phi) {
        if (v < 0 || v >= y.size() || hit[static_cast<size_t>(v)])
            throw std::invalid_argument("phi is not a bijection between the point sets");
        hit[static_cast<size_t>(v)] = true;
    }
}

ScalarField holder_base_weight(const PointedSpace& p, double a) {
    ScalarField w(static_cast<size_t>(p.size()), 1.0);
    for (int i = 0; i < p.size(); ++i) w[i] = std::max(std::pow(p.d_to_base(i), a), 1.0);
    return w;
}

}  // namespace

double distortion_constant(const PointedSpace& x, const PointedSpace& y,
                           const std::vector<int>& phi, RhoMode mode, double alpha) {
    check_bijection(x, y, phi);
    const double a = mode == RhoMode::holder ? alpha : 1.0;
    if (!(a > 0.0) || a > 1.0) throw std::invalid_argument("alpha must lie in (0, 1]");
    const ScalarField wx = holder_base_weight(x, a);
    const ScalarField wy = holder_base_weight(y, a);
    double C = 1.0;
    for (int i = 0; i < x.size(); ++i)
        for (int j = i + 1; j < x.size(); ++j) {
            const double rx = std::pow(x.d(i, j), a) / std::max(wx[i], wx[j]);
            const double ry =
                std::pow(y.d(phi[static_cast<size_t>(i)], phi[static_cast<size_t>(j)]), a) /
                std::max(wy[phi[static_cast<size_t>(i)]], wy[phi[static_cast<size_t>(j)]]);
            if (!(rx > 0.0) || !(ry > 0.0) || !std::isfinite(rx) || !std::isfinite(ry)) return kInf;
            C = std::max({C, rx / ry, ry / rx});
        }
    return C;
}

ScalarField lip_transport(const PointedSpace& x, const PointedSpace& y, const std::vector<int>& phi,
                          const ScalarField& f, double alpha) {
    check_bijection(x, y, phi);
    if (f.size() != x.size()) throw std::invalid_argument("field is not aligned with the source space");
    const ScalarField wx = holder_base_weight(x, alpha);
    const ScalarField wy = holder_base_weight(y, alpha);
    ScalarField g(static_cast<size_t>(y.size()), 0.0);
    for (int i = 0; i < x.size(); ++i) g[phi[static_cast<size_t>(i)]] = f[i] / wx[i] * wy[phi[static_cast<size_t>(i)]];
    return g;
}

TransportCertificate lip_transport_certificate(const PointedSpace& x, const PointedSpace& y,
                                               const std::vector<int>& phi, const ScalarField& f,
                                               double alpha, double C_supplied) {
    TransportCertificate cert;
    cert.C_supplied = C_supplied;
    cert.distortion = distortion_constant(x, y, phi, RhoMode::holder, alpha);
    cert.distortion_ok = cert.distortion <= C_supplied + 1e-12;
    cert.modulus = lip_constant(x.space, f, alpha);

    const ScalarField wx = holder_base_weight(x, alpha);
    const ScalarField wy = holder_base_weight(y, alpha);
    const ScalarField g = lip_transport(x, y, phi, f, alpha);
    cert.term1_ok = true;
    cert.decomposition_ok = true;
    for (int u = 0; u < x.size(); ++u)
        for (int v = u + 1; v < x.size(); ++v) {
            // Order so the second point carries the smaller source weight.
            int i = u, j = v;
            if (wx[i] < wx[j]) std::swap(i, j);
            const int yi = phi[static_cast<size_t>(i)];
            const int yj = phi[static_cast<size_t>(j)];
            const double t1 = std::abs(f[i] - f[j]) * wy[yi] / wx[i];
            const double t2 = std::abs(f[j]) * wy[yi] * std::abs(1.0 / wx[i] - 1.0 / wx[j]);
            const double t3 = std::abs(f[j]) / wx[j] * std::abs(wy[yi] - wy[yj]);
            cert.max_term1 = std::max(cert.max_term1, t1);
            cert.max_term2 = std::max(cert.max_term2, t2);
            cert.max_term3 = std::max(cert.max_term3, t3);
            ++cert.pairs;
            const double dya = std::pow(y.d(yi, yj), alpha);
            const double bound1 = cert.modulus * C_supplied * dya;
            if (bound1 > 0.0) cert.max_term1_ratio = std::max(cert.max_term1_ratio, t1 / bound1);
            if (t1 > bound1 + 1e-9 * (1.0 + bound1)) cert.term1_ok = false;
            const double lhs = std::abs(g[yi] - g[yj]);
            if (lhs > t1 + t2 + t3 + 1e-9 * (1.0 + t1 + t2 + t3)) cert.decomposition_ok = false;
        }
    return cert;
}

}  // namespace lipkit
