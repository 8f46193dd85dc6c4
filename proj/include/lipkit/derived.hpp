#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lipkit/metric.hpp"

namespace lipkit {

struct SymMatrix {
    int n = 0;
    std::vector<double> a;

    SymMatrix() = default;
    explicit SymMatrix(int size) : n(size), a(static_cast<size_t>(size) * size, 0.0) {}
    double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
    double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
};

// Comparison ratio rho(p,q) = d(p,q) / max(xi(p), xi(q)).
SymMatrix rho_matrix(const PointedSpace& p);

// Exact optimum of the derived-metric program at one pair: maximize
// f(p)/xi(p) - f(q)/xi(q) over fields with difference constraints
// |f(x)-f(y)| <= d(x,y) and |f(e)| <= 1. The optimum over the whole space
// equals the optimum of the three-variable program on {e,p,q}, solved by
// vertex enumeration; sign symmetry of the feasible set makes the
// one-sided optimum equal the absolute supremum.
double dprime_pair_oracle(const PointedSpace& p, int i, int j);

// Closed-form derived metric. With the pair ordered so xi(p) <= xi(q):
//   d'(p,q) = d(p,q)/xi(q) + (1/xi(p) - 1/xi(q)) (d(p,e) + 1).
// The form is untrusted until the pair oracle gate has passed (see the
// verification battery); it is bounded by 4 and sandwiched between rho
// and 3 rho.
MetricSpace dprime_matrix(const PointedSpace& p);
double dprime_pair_closed_form(const PointedSpace& p, int i, int j);

// Witness constants for the far-scale contraction property. C[k-1] is the
// least constant such that every pair with d(p,e) >= C and
// d(p,q) < d(p,e)/C has d(p,q) < 1/(k+2). Vacuous entries exceed every
// distance to the base point.
struct AEConstants {
    std::vector<double> C;
    std::vector<bool> vacuous;
    std::vector<bool> attained;

    int k_max() const { return static_cast<int>(C.size()); }
};

AEConstants ae_constants(const PointedSpace& p, int k_max);

// Re-checks the defining implication of every C[k] on the space. Returns
// the first violating (k, p, q) if any.
struct AECertification {
    bool certified = true;
    int k = -1, p = -1, q = -1;
};
AECertification certify_ae_constants(const PointedSpace& p, const AEConstants& a);

struct NetCheck {
    std::string name;
    bool pass = true;
    bool vacuous = false;
    int i = -1, j = -1;  // extremal witness pair
    double margin = 0.0;
};

class NetCertificationError : public std::runtime_error {
  public:
    NetCertificationError(const std::string& check, const std::string& detail)
        : std::runtime_error("net certification failed [" + check + "]: " + detail), check_(check) {}
    const std::string& check() const { return check_; }

  private:
    std::string check_;
};

// Maximal packing of the far region by disjoint closed unit balls, the
// locally constant weight it induces, and the certified constants.
//
//   gamma:      admitted ball centers, all outside the closed ball B(e, C1)
//   assignment: point -> index into gamma, or -1 for core points
//   zeta:       xi(center) on each ball, 1 on the core
//   K:          max(C1, 3/2), verified to satisfy xi/K <= zeta <= K xi
struct NetDecomposition {
    std::vector<int> gamma;
    std::vector<int> assignment;
    ScalarField zeta;
    double K = 1.5;
    double C1 = 1.0;
    AEConstants constants;
    // far_annulus_empty, net_covers_far_region, weight_comparable,
    // ball_boundary_gap, weight_ratio_lipschitz
    std::vector<NetCheck> checks;
    double lip_xi_over_zeta = 0.0;  // w.r.t. the derived metric
    double lip_zeta_over_xi = 0.0;
    std::string notes;
};

// Greedy construction (decreasing d(.,e), label-order tie break) followed
// by full certification; throws NetCertificationError if any check fails.
NetDecomposition build_net(const PointedSpace& p, const AEConstants& a);

enum class Direction { forward, inverse };

// forward: f / xi; inverse: f * xi. Mutually inverse, order preserving.
ScalarField scale_iso_lip(const PointedSpace& p, const ScalarField& f, Direction dir);

struct ScaleIsoCertificate {
    double lip_base = 0.0;     // seminorm of f w.r.t. d
    double lip_derived = 0.0;  // seminorm of f/xi w.r.t. d'
    double value_at_base = 0.0;
    double forward_bound = 0.0;  // max(L(f), |f(e)|, 1)
    double inverse_bound = 0.0;  // 7 L'(f/xi) + |f(e)|
    bool forward_ok = false;
    bool inverse_ok = false;
};
ScaleIsoCertificate scale_iso_lip_certificate(const PointedSpace& p, const ScalarField& f);

// forward: f / zeta; inverse: f * zeta.
ScalarField scale_iso_littlelip(const PointedSpace& p, const NetDecomposition& net,
                                const ScalarField& f, Direction dir);

// Small-scale modulus transfer for f -> f/zeta: with eps the realized
// modulus of f below delta and k the least level with 2/(k+2) < delta,
// every pair with d'(u,v) < min(2/(3 K C1), delta/(2 C_k)) satisfies
// |(f/zeta)(u) - (f/zeta)(v)| <= max(C1, 2) eps d'(u,v).
struct ModulusTransferCertificate {
    bool applicable = false;  // needs some k <= k_max with 2/(k+2) < delta
    double delta = 0.0;
    double epsilon = 0.0;
    int k = 0;
    double pair_threshold = 0.0;
    double factor = 0.0;
    int pairs_checked = 0;
    double max_ratio = 0.0;  // over checked pairs, of |Tf(u)-Tf(v)| / (eps d'(u,v))
    bool pass = true;
    int worst_u = -1, worst_v = -1;
};
ModulusTransferCertificate littlelip_modulus_certificate(const PointedSpace& p,
                                                         const NetDecomposition& net,
                                                         const ScalarField& f, double delta);

// Weight mode for the comparison ratio: Base uses 1 v d and plain
// distances; Holder uses 1 v d^alpha with d^alpha distances.
enum class RhoMode { base, holder };

// Least C >= 1 with rho_Y(phi p, phi q) within [rho_X(p,q)/C, C rho_X(p,q)]
// over all pairs; infinity when some ratio degenerates.
double distortion_constant(const PointedSpace& x, const PointedSpace& y,
                           const std::vector<int>& phi, RhoMode mode, double alpha = 1.0);

// g(y) = f(phi^{-1}(y)) / xi(phi^{-1}(y)) * zeta(y), with xi, zeta the
// Holder base weights of the two spaces.
ScalarField lip_transport(const PointedSpace& x, const PointedSpace& y,
                          const std::vector<int>& phi, const ScalarField& f, double alpha);

struct TransportCertificate {
    double distortion = 0.0;
    double C_supplied = 0.0;
    bool distortion_ok = false;
    double modulus = 0.0;  // realized seminorm of f w.r.t. d_X^alpha
    // Three-term split of |g(y) - g(y')|: value difference, source-weight
    // difference, target-weight difference.
    double max_term1 = 0.0, max_term2 = 0.0, max_term3 = 0.0;
    double max_term1_ratio = 0.0;  // against modulus * C * d_Y^alpha
    bool term1_ok = false;
    bool decomposition_ok = false;
    int pairs = 0;
};
TransportCertificate lip_transport_certificate(const PointedSpace& x, const PointedSpace& y,
                                               const std::vector<int>& phi, const ScalarField& f,
                                               double alpha, double C_supplied);

}  // namespace lipkit
