#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lipkit/order_iso.hpp"
#include "lipkit/random.hpp"

using namespace lipkit;

namespace {

// Two points, phi swaps them, maps t -> 2t at the first output and
// t -> t + 1 at the second.
CompositionOperator swap_affine() {
    CompositionOperator op;
    op.phi = {1, 0};
    op.maps = {MonotoneMap{{0.0, 1.0}, {0.0, 2.0}, 2.0, 2.0},
               MonotoneMap{{0.0, 1.0}, {1.0, 2.0}, 1.0, 1.0}};
    return op;
}

}  // namespace

TEST_CASE("identity operator fixes every field") {
    CompositionOperator id;
    id.phi = {0, 1, 2};
    id.maps = {MonotoneMap::identity(), MonotoneMap::identity(), MonotoneMap::identity()};
    const ScalarField f({3.0, -1.0, 0.5});
    const ScalarField out = apply_operator(id, f);
    for (int i = 0; i < 3; ++i) CHECK(out[i] == f[i]);
}

TEST_CASE("swap with affine maps evaluates per the formula") {
    const ScalarField out = apply_operator(swap_affine(), ScalarField({3.0, 5.0}));
    CHECK(out[0] == 10.0);  // 2 * f(phi^{-1}(0)) = 2 * 5
    CHECK(out[1] == 4.0);   // f(phi^{-1}(1)) + 1 = 3 + 1
}

TEST_CASE("constant fields extract the maps") {
    const CompositionOperator op = swap_affine();
    for (double t : {-2.0, 0.0, 0.7, 3.0}) {
        const ScalarField out = apply_operator(op, ScalarField({t, t}));
        CHECK(out[0] == doctest::Approx(2.0 * t));
        CHECK(out[1] == doctest::Approx(t + 1.0));
    }
}

TEST_CASE("inversion swaps phi and inverts the maps") {
    const CompositionOperator op = swap_affine();
    const CompositionOperator inv = invert_operator(op);
    CHECK(inv.phi == std::vector<int>{1, 0});
    // Inverse maps sit at the X-points: x=0 feeds output 1 (t+1), so its
    // inverse is t-1; x=1 feeds output 0 (2t), inverse t/2.
    CHECK(inv.maps[0](5.0) == doctest::Approx(4.0));
    CHECK(inv.maps[1](5.0) == doctest::Approx(2.5));

    const ScalarField f({3.0, 5.0});
    const ScalarField round = apply_operator(inv, apply_operator(op, f));
    CHECK(round[0] == doctest::Approx(3.0));
    CHECK(round[1] == doctest::Approx(5.0));
}

TEST_CASE("double inversion restores breakpoints exactly") {
    Rng rng(31);
    for (int t = 0; t < 100; ++t) {
        MonotoneMap m;
        const int k = rng.uniform_int(1, 5);
        double x = rng.uniform(-3.0, 0.0), v = rng.uniform(-3.0, 0.0);
        for (int i = 0; i < k; ++i) {
            m.breakpoints.push_back(x);
            m.values.push_back(v);
            x += rng.uniform(0.1, 1.5);
            v += rng.uniform(0.1, 1.5);
        }
        m.left_slope = rng.uniform(0.2, 4.0);
        m.right_slope = rng.uniform(0.2, 4.0);
        const MonotoneMap twice = m.inverse().inverse();
        CHECK(twice.breakpoints == m.breakpoints);
        CHECK(twice.values == m.values);
    }
}

TEST_CASE("factoring recovers the identity and the swap example") {
    const std::vector<double> grid{-1.0, 0.0, 1.0, 2.0};
    {
        const FactorResult r = factor_operator([](const ScalarField& f) { return f; }, 3, grid);
        REQUIRE(r.ok());
        CHECK(r.op->phi == std::vector<int>{0, 1, 2});
        for (int y = 0; y < 3; ++y)
            for (double g : grid) CHECK((*r.op).maps[static_cast<size_t>(y)](g) == doctest::Approx(g));
    }
    {
        const CompositionOperator op = swap_affine();
        const FactorResult r = factor_operator(
            [&op](const ScalarField& f) { return apply_operator(op, f); }, 2, grid);
        REQUIRE(r.ok());
        CHECK(r.op->phi == op.phi);
        for (double g : grid) {
            CHECK((*r.op).maps[0](g) == doctest::Approx(2.0 * g));
            CHECK((*r.op).maps[1](g) == doctest::Approx(g + 1.0));
        }
    }
}

TEST_CASE("non-local transformations are reported as inconsistent") {
    const std::vector<double> grid{0.0, 1.0};
    const FactorResult r = factor_operator(
        [](const ScalarField& f) {
            double sum = 0.0;
            for (double v : f.values) sum += v;
            ScalarField out = f;
            for (double& v : out.values) v += sum;
            return out;
        },
        3, grid);
    CHECK_FALSE(r.ok());
    CHECK(r.inconsistency.find("moved") != std::string::npos);
}

TEST_CASE("order check passes composition operators and catches a negation") {
    const CompositionOperator op = swap_affine();
    const OrderIsoVerdict good = check_order_iso(
        [&op](const ScalarField& f) { return apply_operator(op, f); }, 2, 200, 42);
    CHECK(good.pass);

    const OrderIsoVerdict bad = check_order_iso(
        [](const ScalarField& f) {
            ScalarField out = f;
            out[0] = -out[0];
            return out;
        },
        2, 200, 42);
    CHECK_FALSE(bad.pass);
    CHECK(bad.counterexample.has_value());
}

TEST_CASE("grid family on three points passes every axiom") {
    const LatticeAxiomReport rep = check_lattice_axioms(grid_family(3, {0.0, 1.0, 2.0}));
    CHECK(rep.a1.pass);
    CHECK(rep.a2.pass);
    CHECK(rep.a3.pass);
    CHECK(rep.compatible.pass);
    CHECK(rep.directed.pass);
}

TEST_CASE("constant-only family fails exactly the articulation axiom") {
    FunctionFamily fam;
    fam.n_points = 2;
    fam.members = {ScalarField({0.0, 0.0})};
    const LatticeAxiomReport rep = check_lattice_axioms(fam);
    CHECK_FALSE(rep.a1.pass);
    CHECK(rep.a2.pass);
    CHECK(rep.a3.pass);
    CHECK(rep.compatible.pass);
    CHECK(rep.directed.pass);
}

TEST_CASE("incomparable indicator pair fails articulation and directedness") {
    FunctionFamily fam;
    fam.n_points = 2;
    fam.members = {ScalarField({1.0, 0.0}), ScalarField({0.0, 1.0})};
    const LatticeAxiomReport rep = check_lattice_axioms(fam);
    CHECK_FALSE(rep.a1.pass);
    CHECK_FALSE(rep.directed.pass);
    CHECK(rep.a2.pass);
    CHECK(rep.a3.pass);
    CHECK(rep.compatible.pass);
}

TEST_CASE("empty family fails articulation") {
    FunctionFamily fam;
    fam.n_points = 2;
    CHECK_FALSE(check_lattice_axioms(fam).a1.pass);
}

TEST_CASE("band truncation clamps and fixes the middle band") {
    const ScalarField f({-5.0, 0.5, 9.0});
    const ScalarField g = truncation_witness(f, 0.0, 0.25, 0.75, 1.0);
    CHECK(g[0] == 0.0);
    CHECK(g[1] == 0.5);
    CHECK(g[2] == 1.0);

    // Field already inside the middle band.
    const ScalarField mid({0.3, 0.5, 0.6});
    const ScalarField gm = truncation_witness(mid, 0.0, 0.25, 0.75, 1.0);
    for (int i = 0; i < 3; ++i) CHECK(gm[i] == mid[i]);

    // Idempotence and the collapsed-band form.
    const ScalarField gg = truncation_witness(g, 0.0, 0.25, 0.75, 1.0);
    for (int i = 0; i < 3; ++i) CHECK(gg[i] == g[i]);
    CHECK_NOTHROW(truncation_witness(f, 0.0, 0.5, 0.5, 1.0));
    CHECK_THROWS_AS(truncation_witness(f, 1.0, 0.5, 0.5, 0.0), std::invalid_argument);
}
