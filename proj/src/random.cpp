#include "lipkit/random.hpp"

#include <algorithm>
#include <cmath>

namespace lipkit {

MetricSpace random_metric(Rng& rng, int n, double scale) {
    std::vector<std::vector<double>> m(static_cast<size_t>(n),
                                       std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = scale * (0.05 + 0.95 * rng.uniform());
            m[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
            m[static_cast<size_t>(j)][static_cast<size_t>(i)] = v;
        }
    // Floyd-Warshall repair: shortest-path completion of the weighted graph.
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double via = m[static_cast<size_t>(i)][static_cast<size_t>(k)] +
                                   m[static_cast<size_t>(k)][static_cast<size_t>(j)];
                if (via < m[static_cast<size_t>(i)][static_cast<size_t>(j)])
                    m[static_cast<size_t>(i)][static_cast<size_t>(j)] = via;
            }
    return make_metric(m);
}

PointedSpace random_pointed_space(Rng& rng, int n_min, int n_max) {
    const int n = rng.uniform_int(n_min, n_max);
    // Log-uniform scale across roughly four orders of magnitude.
    const double scale = std::exp(rng.uniform(std::log(0.05), std::log(60.0)));
    MetricSpace m = random_metric(rng, n, scale);
    const int base = rng.uniform_int(0, n - 1);
    return make_pointed(std::move(m), base);
}

ScalarField random_field(Rng& rng, int n, double scale) {
    ScalarField f(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) f[i] = scale * rng.uniform(-1.0, 1.0);
    return f;
}

}  // namespace lipkit
