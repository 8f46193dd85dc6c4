#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lipkit/metric.hpp"
#include "lipkit/random.hpp"

using namespace lipkit;

TEST_CASE("a single point is a valid space") {
    const MetricValidation v = validate_metric({{0.0}});
    REQUIRE(v.ok());
    CHECK(v.space->size() == 1);
}

TEST_CASE("smallest nondegenerate metric validates") {
    CHECK(validate_metric({{0, 1}, {1, 0}}).ok());
}

TEST_CASE("triangle violation is reported with the witnessing triple") {
    const MetricValidation v = validate_metric({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
    REQUIRE_FALSE(v.ok());
    CHECK(v.violation->axiom == "triangle_inequality");
    CHECK(v.violation->i == 0);
    CHECK(v.violation->j == 2);
    CHECK(v.violation->k == 1);
}

TEST_CASE("each failure mode is distinctly labeled") {
    CHECK(validate_metric({{0, 1}}).violation->axiom == "non_square");
    CHECK(validate_metric({{0, -1}, {-1, 0}}).violation->axiom == "negative_entry");
    CHECK(validate_metric({{0, 1}, {2, 0}}).violation->axiom == "asymmetry");
    CHECK(validate_metric({{1, 1}, {1, 0}}).violation->axiom == "nonzero_diagonal");
    CHECK(validate_metric({{0, 0}, {0, 0}}).violation->axiom == "zero_off_diagonal");
}

TEST_CASE("holder transform at alpha 1 is the identity") {
    const MetricSpace m = make_metric({{0, 4}, {4, 0}});
    CHECK(holder_transform(m, 1.0).d(0, 1) == 4.0);
}

TEST_CASE("square-root transform halves exponents and keeps the metric") {
    const MetricSpace m = make_metric({{0, 4}, {4, 0}});
    CHECK(holder_transform(m, 0.5).d(0, 1) == 2.0);

    const MetricSpace tri = make_metric({{0, 1, 4}, {1, 0, 3}, {4, 3, 0}});
    const MetricSpace h = holder_transform(tri, 0.5);
    CHECK(h.d(0, 1) == 1.0);
    CHECK(h.d(0, 2) == 2.0);
    CHECK(h.d(1, 2) == doctest::Approx(std::sqrt(3.0)));
    std::vector<std::vector<double>> rows(3, std::vector<double>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) rows[i][j] = h.d(i, j);
    CHECK(validate_metric(rows).ok());
}

TEST_CASE("holder transform rejects exponents outside (0,1]") {
    const MetricSpace m = make_metric({{0, 1}, {1, 0}});
    CHECK_THROWS_AS(holder_transform(m, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(holder_transform(m, 1.5), std::invalid_argument);
}

TEST_CASE("truncation caps distances at one") {
    CHECK(truncate_metric(make_metric({{0, 5}, {5, 0}})).d(0, 1) == 1.0);
    const MetricSpace small = make_metric({{0, 0.5}, {0.5, 0}});
    CHECK(truncate_metric(small).d(0, 1) == 0.5);
    const MetricSpace mixed = make_metric({{0, 0.5, 2}, {0.5, 0, 2}, {2, 2, 0}});
    const MetricSpace t = truncate_metric(mixed);
    CHECK(t.d(0, 1) == 0.5);
    CHECK(t.d(0, 2) == 1.0);
    CHECK(t.d(1, 2) == 1.0);
}

TEST_CASE("base weight clamps below by one and reads the base row") {
    const PointedSpace single = make_pointed(make_metric({{0.0}}), 0);
    CHECK(base_weight(single)[0] == 1.0);

    const PointedSpace p = make_pointed(metric_from_line({0.0, 0.5, 3.0}), 0);
    const ScalarField xi = base_weight(p);
    CHECK(xi[0] == 1.0);
    CHECK(xi[1] == 1.0);
    CHECK(xi[2] == 3.0);

    const PointedSpace q = make_pointed(metric_from_line({0.0, 2.0, 4.0}), 0);
    const ScalarField xi2 = base_weight(q);
    CHECK(xi2[1] == 2.0);
    CHECK(xi2[2] == 4.0);
}

TEST_CASE("annulus keeps strictly-between points only") {
    const PointedSpace p = make_pointed(metric_from_line({0.0, 1.0, 2.0, 10.0}), 0);
    CHECK(annulus_indices(p, 0, 0.5, 3.0) == std::vector<int>{1, 2});
    // Full deleted space with an infinity surrogate.
    const double big = p.space.max_distance() + 1.0;
    CHECK(annulus_indices(p, 0, 0.0, big).size() == 3);
    // Vacuous band.
    CHECK(annulus_indices(p, 0, 2.5, 2.75).empty());
    CHECK_THROWS_AS(annulus_indices(p, 0, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("random metrics from shortest-path repair always validate") {
    Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        const MetricSpace m = random_metric(rng, rng.uniform_int(2, 12), rng.uniform(0.1, 30.0));
        std::vector<std::vector<double>> rows(static_cast<size_t>(m.size()),
                                              std::vector<double>(static_cast<size_t>(m.size())));
        for (int i = 0; i < m.size(); ++i)
            for (int j = 0; j < m.size(); ++j) rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = m.d(i, j);
        CHECK(validate_metric(rows).ok());
    }
}
