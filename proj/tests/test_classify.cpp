#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "lipkit/classify.hpp"
#include "lipkit/random.hpp"

using namespace lipkit;

TEST_CASE("separation gap basics") {
    CHECK(std::isinf(separation_gap(metric_from_line({7.0}))));
    CHECK(separation_gap(metric_from_line({0.0, 1.0, 3.0})) == 1.0);
    // Truncation keeps the gap when it is below the cap.
    const MetricSpace m = metric_from_line({0.0, 0.4, 5.0});
    CHECK(separation_gap(truncate_metric(m)) == separation_gap(m));
}

TEST_CASE("strictly separated points at threshold eps") {
    const MetricSpace m = metric_from_line({0.0, 0.5, 10.0});
    CHECK(x_epsilon(m, 1.0) == std::vector<int>{2});
    CHECK(x_epsilon(m, 0.4).size() == 3);
    CHECK(x_epsilon(m, 11.0).empty());
}

TEST_CASE("separated sets shrink as eps grows") {
    Rng rng(9);
    for (int t = 0; t < 30; ++t) {
        const MetricSpace m = random_metric(rng, rng.uniform_int(2, 15), rng.uniform(0.2, 4.0));
        const double e1 = rng.uniform(0.01, 1.0);
        const double e2 = e1 + rng.uniform(0.01, 1.0);
        const auto big = x_epsilon(m, e2);
        const auto small = x_epsilon(m, e1);
        for (int idx : big) CHECK(std::find(small.begin(), small.end(), idx) != small.end());
    }
}

TEST_CASE("expansiveness witness is the worst pair ratio") {
    const PointedSpace two = make_pointed(metric_from_line({0.0, 5.0}), 0);
    CHECK(expansive_witness(two).witness == doctest::Approx(1.0));

    const PointedSpace powers = make_pointed(metric_from_line({0.0, 1.0, 2.0, 4.0, 8.0}), 0);
    CHECK(expansive_witness(powers).witness == doctest::Approx(0.5));

    const PointedSpace close_far = make_pointed(metric_from_line({0.0, 1.0, 1.001}), 0);
    CHECK(expansive_witness(close_far).witness == doctest::Approx(0.001 / 1.001));
}

TEST_CASE("far-scale witness for a two-point space is one") {
    const PointedSpace two = make_pointed(metric_from_line({0.0, 3.0}), 0);
    const WitnessReport rep = expansive_at_inf_witness(two);
    CHECK(rep.witness == doctest::Approx(1.0));
    CHECK(rep.verdict == "holds");
}

TEST_CASE("geometric powers give a non-vacuous far-scale witness near two") {
    HorizonFamily geo{"geometric", 2.0, {}, 0};
    const WitnessReport rep = expansive_at_inf_witness(family_sample(geo, 5));
    CHECK_FALSE(rep.witness_vacuous);
    // Binding pair is the top two powers: (2^5 - 2) / 2^4.
    CHECK(*rep.witness == doctest::Approx(30.0 / 16.0));
}

TEST_CASE("doubled powers admit only vacuous far-scale witnesses") {
    HorizonFamily dbl{"doubled", 2.0, {}, 0};
    const WitnessReport rep = expansive_at_inf_witness(family_sample(dbl, 6));
    CHECK(rep.witness_vacuous);
    CHECK(rep.verdict == "vacuous");
    CHECK(*rep.witness > 62.0);  // above every distance to the base
}

TEST_CASE("almost-expansive witness relaxes with larger eps") {
    HorizonFamily dbl{"doubled", 2.0, {}, 0};
    const PointedSpace d = family_sample(dbl, 6);
    const WitnessReport tight = almost_expansive_witness(d, 0.6);
    CHECK_FALSE(tight.witness_vacuous);

    const WitnessReport loose = almost_expansive_witness(d, 1e9);
    CHECK(*loose.witness == 1.0);

    const WitnessReport w1 = almost_expansive_witness(d, 0.3);
    const WitnessReport w2 = almost_expansive_witness(d, 0.9);
    CHECK(*w2.witness <= *w1.witness + 1e-12);

    CHECK_THROWS_AS(almost_expansive_witness(d, 0.0), std::invalid_argument);
}

TEST_CASE("territories split at the threshold and report hop diameters") {
    const MetricSpace m = metric_from_line({0.0, 1.0, 2.0, 10.0});
    const TerritoryDecomposition dec = ofarrell_decompose(m, 1.0);
    CHECK(dec.component_count == 2);
    CHECK(dec.component_of[0] == dec.component_of[1]);
    CHECK(dec.component_of[1] == dec.component_of[2]);
    CHECK(dec.component_of[3] != dec.component_of[0]);
    CHECK(dec.step_diameter[static_cast<size_t>(dec.component_of[0])] == 2);
    CHECK(dec.step_diameter[static_cast<size_t>(dec.component_of[3])] == 0);
}

TEST_CASE("territory edge cases: one component or all singletons") {
    const MetricSpace m = metric_from_line({0.0, 1.0, 2.0, 10.0});
    CHECK(ofarrell_decompose(m, 100.0).component_count == 1);
    const TerritoryDecomposition fine = ofarrell_decompose(m, 0.5);
    CHECK(fine.component_count == 4);
    for (int d : fine.step_diameter) CHECK(d == 0);
}

TEST_CASE("proximal profile counts clustered points") {
    std::vector<double> xs;
    for (int n = 1; n <= 10; ++n) xs.push_back(1.0 / n);
    xs.push_back(0.0);
    const MetricSpace m = metric_from_line(xs);
    const ProximalProfile prof = proximal_profile(m, {0.001, 0.02});
    CHECK(prof.proximally_compact);
    // Nearest-neighbor gaps are 1/(n(n+1)); at eps = 0.001 every point is
    // separated, at eps = 0.02 the four smallest reciprocals cluster.
    CHECK(prof.rows[0].clustered_count == 0);
    CHECK(prof.rows[0].separated_count == 11);
    CHECK(prof.rows[1].clustered_count == 4);
    CHECK(prof.rows[1].separated_count == 7);

    const MetricSpace wide = metric_from_line({0.0, 1.0, 2.0});
    CHECK(proximal_profile(wide, {0.5}).rows[0].clustered_count == 0);
    CHECK_THROWS_AS(proximal_profile(wide, {}), std::invalid_argument);
}

TEST_CASE("family samples are nested and carry the declared base") {
    HorizonFamily dbl{"doubled", 2.0, {}, 0};
    const PointedSpace small = family_sample(dbl, 3);
    const PointedSpace large = family_sample(dbl, 5);
    CHECK(small.size() == 6);
    CHECK(large.size() == 10);
    for (int i = 0; i < small.size(); ++i)
        CHECK(small.space.labels[static_cast<size_t>(i)] == large.space.labels[static_cast<size_t>(i)]);
    CHECK(small.base == 0);

    HorizonFamily file{"file", 0.0, {0.0, 1.0, 4.0, 9.0}, 0};
    CHECK(family_sample(file, 3).size() == 3);
    CHECK_THROWS_AS(family_sample(HorizonFamily{"nope", 2.0, {}, 0}, 3), std::invalid_argument);
}

TEST_CASE("trend across horizons distinguishes the two power families") {
    const std::vector<int> horizons{10, 20, 40};
    HorizonFamily geo{"geometric", 2.0, {}, 0};
    const TrendReport stable = family_trend(geo, "expansive_at_inf", horizons);
    CHECK(stable.verdict == "stable");
    CHECK(stable.heuristic);
    for (const WitnessReport& w : stable.per_horizon) CHECK(*w.witness == doctest::Approx(2.0).epsilon(0.01));

    HorizonFamily dbl{"doubled", 2.0, {}, 0};
    const TrendReport diverging = family_trend(dbl, "expansive_at_inf", horizons);
    CHECK(diverging.verdict == "diverging");
    for (const WitnessReport& w : diverging.per_horizon) CHECK(w.witness_vacuous);

    TrendParams params;
    params.epsilon = 0.5;
    const TrendReport damped = family_trend(dbl, "almost_expansive", horizons, params);
    CHECK(damped.verdict == "stable");

    CHECK_THROWS_AS(family_trend(geo, "unknown_property", horizons), std::invalid_argument);
    CHECK_THROWS_AS(family_trend(geo, "expansive_at_inf", {10, 10}), std::invalid_argument);
}
