#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lipkit/classify.hpp"
#include "lipkit/derived.hpp"
#include "lipkit/lipschitz.hpp"
#include "lipkit/random.hpp"

using namespace lipkit;

namespace {

// e at 0, p at 2, q at 4 with d(p,q) = 2 (collinear reals).
PointedSpace three_point_chain() { return make_pointed(metric_from_line({0.0, 2.0, 4.0}), 0); }

}  // namespace

TEST_CASE("comparison ratio matches the defining formula") {
    const PointedSpace p = three_point_chain();
    const SymMatrix rho = rho_matrix(p);
    CHECK(rho.at(1, 2) == doctest::Approx(2.0 / 4.0));
    CHECK(rho.at(0, 1) == doctest::Approx(1.0));
    for (int i = 0; i < 3; ++i) CHECK(rho.at(i, i) == 0.0);

    // rho(e, x) never exceeds one.
    Rng rng(5);
    for (int t = 0; t < 30; ++t) {
        const PointedSpace q = random_pointed_space(rng, 2, 8);
        const SymMatrix r = rho_matrix(q);
        for (int i = 0; i < q.size(); ++i) CHECK(r.at(q.base, i) <= 1.0 + 1e-12);
    }
}

TEST_CASE("two-point program optimum is reached by the closed form") {
    const PointedSpace p = make_pointed(metric_from_line({0.0, 1.0}), 0);
    CHECK(dprime_pair_oracle(p, 0, 1) == doctest::Approx(1.0));
    CHECK(dprime_pair_closed_form(p, 0, 1) == doctest::Approx(1.0));

    const PointedSpace far = make_pointed(metric_from_line({0.0, 2.0}), 0);
    CHECK(dprime_pair_closed_form(far, 0, 1) == doctest::Approx(1.5));
    CHECK(dprime_pair_oracle(far, 0, 1) == doctest::Approx(1.5));
}

TEST_CASE("three-point chain reproduces the worked value") {
    const PointedSpace p = three_point_chain();
    CHECK(dprime_pair_oracle(p, 1, 2) == doctest::Approx(1.25));
    CHECK(dprime_pair_closed_form(p, 1, 2) == doctest::Approx(1.25));
}

TEST_CASE("derived metric is sandwiched and bounded on random spaces") {
    Rng rng(23);
    for (int t = 0; t < 50; ++t) {
        const PointedSpace p = random_pointed_space(rng, 2, 9);
        const MetricSpace dp = dprime_matrix(p);
        const SymMatrix rho = rho_matrix(p);
        for (int i = 0; i < p.size(); ++i)
            for (int j = i + 1; j < p.size(); ++j) {
                CHECK(dp.d(i, j) >= rho.at(i, j) * (1.0 - 1e-12));
                CHECK(dp.d(i, j) <= 3.0 * rho.at(i, j) * (1.0 + 1e-12));
                CHECK(dp.d(i, j) <= 4.0);
            }
    }
}

TEST_CASE("witness constants certify and flag vacuity") {
    // Two points: the condition is trivially met at C = 1.
    const PointedSpace two = make_pointed(metric_from_line({0.0, 1.0}), 0);
    const AEConstants a2 = ae_constants(two, 3);
    CHECK(a2.C[0] == 1.0);
    CHECK(certify_ae_constants(two, a2).certified);

    // Geometric family: certified non-vacuously.
    HorizonFamily geo{"geometric", 2.0, {}, 0};
    const PointedSpace g = family_sample(geo, 5);
    const AEConstants ag = ae_constants(g, 3);
    CHECK(certify_ae_constants(g, ag).certified);
    CHECK_FALSE(ag.vacuous[0]);
    for (int k = 1; k < 3; ++k) CHECK(ag.C[static_cast<size_t>(k)] > ag.C[static_cast<size_t>(k - 1)]);

    // Doubled family at level 1 (threshold 1/3): the binding pair is the
    // n = 3 doublet at distance exactly 1/3, so the constant sits just
    // above its distance to the base and stays there as the horizon grows.
    HorizonFamily dbl{"doubled", 2.0, {}, 0};
    const PointedSpace d6 = family_sample(dbl, 6);
    const AEConstants ad = ae_constants(d6, 1);
    CHECK(certify_ae_constants(d6, ad).certified);
    CHECK_FALSE(ad.vacuous[0]);
    CHECK(ad.C[0] == doctest::Approx(8.0 + 1.0 / 3.0 - 2.0));
    CHECK_FALSE(ad.attained[0]);
    const AEConstants ad9 = ae_constants(family_sample(dbl, 9), 1);
    CHECK(ad9.C[0] == doctest::Approx(ad.C[0]));

    // At a fine threshold every doublet is a bad pair and only vacuous
    // constants remain.
    const AEConstants fine = ae_constants(d6, 8);
    CHECK(fine.vacuous[7]);
}

TEST_CASE("tampered constants fail certification") {
    HorizonFamily geo{"geometric", 2.0, {}, 0};
    const PointedSpace g = family_sample(geo, 6);
    AEConstants a = ae_constants(g, 2);
    a.C[0] = 1.0;  // too small for this space
    CHECK_FALSE(certify_ae_constants(g, a).certified);
    CHECK_THROWS_AS(build_net(g, a), NetCertificationError);
}

TEST_CASE("net on a tight cluster is trivial") {
    const PointedSpace p = make_pointed(metric_from_line({0.0, 0.3, 0.6}), 0);
    const AEConstants a = ae_constants(p, 2);
    const NetDecomposition net = build_net(p, a);
    CHECK(net.gamma.empty());
    for (int i = 0; i < p.size(); ++i) {
        CHECK(net.assignment[static_cast<size_t>(i)] == -1);
        CHECK(net.zeta[i] == 1.0);
    }
    for (const NetCheck& c : net.checks) CHECK(c.pass);
}

TEST_CASE("net on the geometric family covers every far point") {
    HorizonFamily geo{"geometric", 2.0, {}, 0};
    const PointedSpace g = family_sample(geo, 8);
    const AEConstants a = ae_constants(g, 3);
    const NetDecomposition net = build_net(g, a);
    CHECK(net.K == std::max(net.C1, 1.5));
    const ScalarField xi = base_weight(g);
    for (int i = 0; i < g.size(); ++i) {
        const int gi = net.assignment[static_cast<size_t>(i)];
        if (gi >= 0)
            CHECK(net.zeta[i] == xi[net.gamma[static_cast<size_t>(gi)]]);
        else
            CHECK(net.zeta[i] == 1.0);
        CHECK(net.zeta[i] <= net.K * xi[i] * (1.0 + 1e-12));
        CHECK(net.zeta[i] >= xi[i] / net.K * (1.0 - 1e-12));
    }
    for (const NetCheck& c : net.checks) CHECK(c.pass);
}

TEST_CASE("two far points within a unit ball share one net center") {
    // 100 and 100.2 overlap as unit balls; the greedy admits the farther
    // one and the other inherits its weight.
    const PointedSpace p = make_pointed(metric_from_line({0.0, 100.0, 100.2}), 0);
    const AEConstants a = ae_constants(p, 1);
    CHECK(a.C[0] == 1.0);
    const NetDecomposition net = build_net(p, a);
    REQUIRE(net.gamma.size() == 1);
    const int center = net.gamma[0];
    CHECK(p.d_to_base(center) == doctest::Approx(100.2));
    CHECK(net.assignment[1] == 0);
    CHECK(net.assignment[2] == 0);
    CHECK(net.zeta[1] == net.zeta[2]);
    CHECK(net.zeta[1] == std::max(p.d_to_base(center), 1.0));
}

TEST_CASE("scaling isomorphism round trips and maps the weight to one") {
    const PointedSpace p = make_pointed(metric_from_line({0.0, 3.0}), 0);
    const ScalarField xi = base_weight(p);
    const ScalarField one = scale_iso_lip(p, xi, Direction::forward);
    CHECK(one[0] == 1.0);
    CHECK(one[1] == 1.0);

    const ScalarField f({1.0, 4.0});
    const ScalarField round = scale_iso_lip(p, scale_iso_lip(p, f, Direction::forward), Direction::inverse);
    CHECK(round[0] == f[0]);
    CHECK(round[1] == f[1]);

    const ScaleIsoCertificate cert = scale_iso_lip_certificate(p, f);
    CHECK(cert.forward_ok);
    CHECK(cert.inverse_ok);
    CHECK(cert.lip_base == doctest::Approx(1.0));
}

TEST_CASE("weight quotient certificate covers all qualifying pairs") {
    HorizonFamily geo{"geometric", 2.0, {}, 0};
    const PointedSpace g = family_sample(geo, 8);
    const AEConstants a = ae_constants(g, 4);
    const NetDecomposition net = build_net(g, a);

    ScalarField f(static_cast<size_t>(g.size()), 0.0);
    for (int i = 0; i < g.size(); ++i) f[i] = std::min(g.d_to_base(i), 10.0);

    const ScalarField fwd = scale_iso_littlelip(g, net, f, Direction::forward);
    const ScalarField back = scale_iso_littlelip(g, net, fwd, Direction::inverse);
    for (int i = 0; i < g.size(); ++i) CHECK(back[i] == doctest::Approx(f[i]));

    const ScalarField zeta_fwd = scale_iso_littlelip(g, net, net.zeta, Direction::forward);
    for (int i = 0; i < g.size(); ++i) CHECK(zeta_fwd[i] == 1.0);

    const ModulusTransferCertificate cert =
        littlelip_modulus_certificate(g, net, f, 3.0 / (a.k_max() + 2));
    CHECK(cert.applicable);
    CHECK(cert.pass);
}

TEST_CASE("distortion of the identity is one and of symmetry swaps is one") {
    const PointedSpace p = three_point_chain();
    std::vector<int> id{0, 1, 2};
    CHECK(distortion_constant(p, p, id, RhoMode::base) == doctest::Approx(1.0));

    // Symmetric two-point flanks around the base.
    const PointedSpace sym = make_pointed(metric_from_line({-1.0, 0.0, 1.0}), 1);
    std::vector<int> swap{2, 1, 0};
    CHECK(distortion_constant(sym, sym, swap, RhoMode::base) == doctest::Approx(1.0));

    CHECK_THROWS_AS(distortion_constant(p, p, std::vector<int>{0, 0, 2}, RhoMode::base),
                    std::invalid_argument);
}

TEST_CASE("doubling the metric distorts rho by a computable constant") {
    const PointedSpace p = three_point_chain();
    MetricSpace doubled = p.space;
    for (double& v : doubled.dist) v *= 2.0;
    const PointedSpace q = make_pointed(std::move(doubled), 0);
    const double c = distortion_constant(p, q, {0, 1, 2}, RhoMode::base);
    // Brute force over the three pairs.
    const SymMatrix rx = rho_matrix(p);
    const SymMatrix ry = rho_matrix(q);
    double expect = 1.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const double ratio = ry.at(i, j) / rx.at(i, j);
            expect = std::max({expect, ratio, 1.0 / ratio});
        }
    CHECK(c == doctest::Approx(expect));
}

TEST_CASE("transport along the identity cancels the weights") {
    const PointedSpace p = three_point_chain();
    const ScalarField f({0.3, -1.0, 2.0});
    const ScalarField g = lip_transport(p, p, {0, 1, 2}, f, 0.5);
    for (int i = 0; i < 3; ++i) CHECK(g[i] == doctest::Approx(f[i]));

    // Transporting the source weight yields the target weight.
    ScalarField xi_a(static_cast<size_t>(3), 1.0);
    for (int i = 0; i < 3; ++i) xi_a[i] = std::max(std::pow(p.d_to_base(i), 0.5), 1.0);
    MetricSpace doubled = p.space;
    for (double& v : doubled.dist) v *= 2.0;
    const PointedSpace q = make_pointed(std::move(doubled), 0);
    const ScalarField moved = lip_transport(p, q, {0, 1, 2}, xi_a, 0.5);
    for (int i = 0; i < 3; ++i)
        CHECK(moved[i] == doctest::Approx(std::max(std::pow(q.d_to_base(i), 0.5), 1.0)));
}

TEST_CASE("transport certificate bounds the value term") {
    const PointedSpace p = three_point_chain();
    MetricSpace warped = p.space;
    for (double& v : warped.dist) v *= 1.7;
    const PointedSpace q = make_pointed(std::move(warped), 0);
    const double c = distortion_constant(p, q, {0, 1, 2}, RhoMode::holder, 0.5);
    const ScalarField f({0.0, 1.0, -0.5});
    const TransportCertificate cert = lip_transport_certificate(p, q, {0, 1, 2}, f, 0.5, c);
    CHECK(cert.distortion_ok);
    CHECK(cert.term1_ok);
    CHECK(cert.decomposition_ok);
    CHECK(cert.max_term1_ratio <= 1.0 + 1e-9);
}
