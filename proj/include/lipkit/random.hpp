#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lipkit/metric.hpp"

namespace lipkit {

// Seeded generator with hand-rolled draws. std::mt19937_64 is specified
// bit-for-bit by the standard while the distribution adapters are not,
// so reports stay byte-identical for a fixed seed.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t bits() { return gen_(); }
    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(gen_() % static_cast<uint64_t>(hi - lo + 1));
    }
    bool coin(double p = 0.5) { return uniform() < p; }

  private:
    std::mt19937_64 gen_;
};

// Random symmetric nonnegative matrix repaired into a metric by
// all-pairs shortest paths. Always valid; scale sets the magnitude.
MetricSpace random_metric(Rng& rng, int n, double scale = 1.0);

// random_metric with a random base point and a mixed magnitude regime,
// so both xi == 1 and xi >> 1 territories get exercised.
PointedSpace random_pointed_space(Rng& rng, int n_min, int n_max);

ScalarField random_field(Rng& rng, int n, double scale = 1.0);

}  // namespace lipkit
