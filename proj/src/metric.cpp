#include "lipkit/metric.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lipkit {

std::vector<std::string> default_labels(int n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    return labels;
}

double MetricSpace::max_distance() const {
    double m = 0.0;
    for (double v : dist) m = std::max(m, v);
    return m;
}

std::vector<double> MetricSpace::realized_distances() const {
    std::set<double> s;
    const int n = size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s.insert(d(i, j));
    return {s.begin(), s.end()};
}

int MetricSpace::index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (labels[static_cast<size_t>(i)] == label) return i;
    return -1;
}

namespace {

MetricValidation fail(std::string axiom, int i, int j, int k, std::string message) {
    MetricValidation v;
    v.violation = MetricViolation{std::move(axiom), i, j, k, std::move(message)};
    return v;
}

std::string cell(int i, int j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

MetricValidation validate_metric(const std::vector<std::vector<double>>& matrix,
                                 std::vector<std::string> labels) {
    const int n = static_cast<int>(matrix.size());
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(matrix[static_cast<size_t>(i)].size()) != n)
            return fail("non_square", i, -1, -1,
                        "row " + std::to_string(i) + " has " +
                            std::to_string(matrix[static_cast<size_t>(i)].size()) +
                            " entries, expected " + std::to_string(n));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double v = matrix[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (!(v >= 0.0) || !std::isfinite(v))
                return fail("negative_entry", i, j, -1,
                            "entry " + cell(i, j) + " is not a finite nonnegative real");
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (matrix[static_cast<size_t>(i)][static_cast<size_t>(j)] !=
                matrix[static_cast<size_t>(j)][static_cast<size_t>(i)])
                return fail("asymmetry", i, j, -1, "entries " + cell(i, j) + " and " + cell(j, i) + " differ");
    for (int i = 0; i < n; ++i)
        if (matrix[static_cast<size_t>(i)][static_cast<size_t>(i)] != 0.0)
            return fail("nonzero_diagonal", i, i, -1, "diagonal entry " + cell(i, i) + " is nonzero");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (matrix[static_cast<size_t>(i)][static_cast<size_t>(j)] == 0.0)
                return fail("zero_off_diagonal", i, j, -1,
                            "distinct points " + cell(i, j) + " are at distance zero");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const double lhs = matrix[static_cast<size_t>(i)][static_cast<size_t>(k)];
                const double rhs = matrix[static_cast<size_t>(i)][static_cast<size_t>(j)] +
                                   matrix[static_cast<size_t>(j)][static_cast<size_t>(k)];
                const double slack = std::max(kTriangleAbsTol, kTriangleRelTol * std::max(lhs, rhs));
                if (lhs > rhs + slack) {
                    std::ostringstream msg;
                    msg << "d" << cell(i, k) << " = " << lhs << " exceeds d" << cell(i, j) << " + d"
                        << cell(j, k) << " = " << rhs;
                    return fail("triangle_inequality", i, k, j, msg.str());
                }
            }
        }

    MetricSpace space;
    space.labels = labels.empty() ? default_labels(n) : std::move(labels);
    if (static_cast<int>(space.labels.size()) != n)
        throw std::invalid_argument("label count does not match matrix size");
    {
        std::set<std::string> seen(space.labels.begin(), space.labels.end());
        if (static_cast<int>(seen.size()) != n) throw std::invalid_argument("labels are not distinct");
    }
    space.dist.resize(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) space.d(i, j) = matrix[static_cast<size_t>(i)][static_cast<size_t>(j)];
    MetricValidation result;
    result.space = std::move(space);
    return result;
}

MetricSpace make_metric(const std::vector<std::vector<double>>& matrix, std::vector<std::string> labels) {
    MetricValidation v = validate_metric(matrix, std::move(labels));
    if (!v.ok()) throw std::invalid_argument("invalid metric: " + v.violation->axiom + ": " + v.violation->message);
    return *std::move(v.space);
}

MetricSpace metric_from_points(const std::vector<std::vector<double>>& coords,
                               std::vector<std::string> labels) {
    const int n = static_cast<int>(coords.size());
    std::vector<std::vector<double>> m(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (coords[static_cast<size_t>(i)].size() != coords[static_cast<size_t>(j)].size())
                throw std::invalid_argument("coordinate rows have mixed dimension");
            double s = 0.0;
            for (size_t t = 0; t < coords[static_cast<size_t>(i)].size(); ++t) {
                const double diff = coords[static_cast<size_t>(i)][t] - coords[static_cast<size_t>(j)][t];
                s += diff * diff;
            }
            m[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::sqrt(s);
            m[static_cast<size_t>(j)][static_cast<size_t>(i)] = m[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
    return make_metric(m, std::move(labels));
}

MetricSpace metric_from_line(const std::vector<double>& xs) {
    std::vector<std::vector<double>> coords;
    std::vector<std::string> labels;
    coords.reserve(xs.size());
    for (double x : xs) {
        coords.push_back({x});
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        labels.emplace_back(buf);
    }
    return metric_from_points(coords, std::move(labels));
}

PointedSpace make_pointed(MetricSpace space, int base) {
    if (base < 0 || base >= space.size()) throw std::invalid_argument("base point index out of range");
    return PointedSpace{std::move(space), base};
}

MetricSpace holder_transform(const MetricSpace& m, double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0) throw std::invalid_argument("alpha must lie in (0, 1]");
    MetricSpace out = m;
    if (alpha == 1.0) return out;
    for (double& v : out.dist) v = std::pow(v, alpha);
    return out;
}

MetricSpace truncate_metric(const MetricSpace& m) {
    MetricSpace out = m;
    for (double& v : out.dist) v = std::min(v, 1.0);
    return out;
}

ScalarField base_weight(const PointedSpace& p) {
    ScalarField xi(static_cast<size_t>(p.size()), 1.0);
    for (int i = 0; i < p.size(); ++i) xi[i] = std::max(p.d_to_base(i), 1.0);
    return xi;
}

std::vector<int> annulus_indices(const PointedSpace& p, int center, double r1, double r2) {
    if (center < 0 || center >= p.size()) throw std::invalid_argument("annulus center out of range");
    if (!(r1 >= 0.0) || !(r1 < r2)) throw std::invalid_argument("annulus radii must satisfy 0 <= r1 < r2");
    std::vector<int> out;
    for (int z = 0; z < p.size(); ++z) {
        const double dz = p.d(z, center);
        if (dz > r1 && dz < r2) out.push_back(z);
    }
    return out;
}

}  // namespace lipkit
