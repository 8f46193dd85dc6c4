#pragma once

#include <optional>
#include <string>
#include <vector>

namespace lipkit {

// Finite metric space: distinct point labels plus a dense symmetric
// distance matrix stored row-major.
struct MetricSpace {
    std::vector<std::string> labels;
    std::vector<double> dist;

    int size() const { return static_cast<int>(labels.size()); }
    double d(int i, int j) const { return dist[static_cast<size_t>(i) * labels.size() + j]; }
    double& d(int i, int j) { return dist[static_cast<size_t>(i) * labels.size() + j]; }

    double max_distance() const;
    // Sorted distinct off-diagonal distances.
    std::vector<double> realized_distances() const;
    int index_of(const std::string& label) const;
};

// Metric space with a distinguished base point.
struct PointedSpace {
    MetricSpace space;
    int base = 0;

    int size() const { return space.size(); }
    double d(int i, int j) const { return space.d(i, j); }
    double d_to_base(int i) const { return space.d(i, base); }
};

// Real-valued function on the points of a space, aligned by index.
struct ScalarField {
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(std::vector<double> v) : values(std::move(v)) {}
    ScalarField(std::initializer_list<double> v) : values(v) {}
    ScalarField(size_t n, double fill) : values(n, fill) {}

    int size() const { return static_cast<int>(values.size()); }
    double operator[](int i) const { return values[static_cast<size_t>(i)]; }
    double& operator[](int i) { return values[static_cast<size_t>(i)]; }
};

struct MetricViolation {
    // One of: non_square, negative_entry, asymmetry, nonzero_diagonal,
    // zero_off_diagonal, triangle_inequality.
    std::string axiom;
    int i = -1, j = -1, k = -1;
    std::string message;
};

struct MetricValidation {
    std::optional<MetricSpace> space;
    std::optional<MetricViolation> violation;

    bool ok() const { return space.has_value(); }
};

// Triangle slack: relative 1e-9 with absolute floor 1e-12, so metrics
// surviving a Holder transform of double inputs still validate.
inline constexpr double kTriangleRelTol = 1e-9;
inline constexpr double kTriangleAbsTol = 1e-12;

MetricValidation validate_metric(const std::vector<std::vector<double>>& matrix,
                                 std::vector<std::string> labels = {});

// Throwing wrappers for callers that treat invalid input as a bug.
MetricSpace make_metric(const std::vector<std::vector<double>>& matrix,
                        std::vector<std::string> labels = {});
MetricSpace metric_from_points(const std::vector<std::vector<double>>& coords,
                               std::vector<std::string> labels = {});
// One-dimensional point set with |x - y| distances; labels from values.
MetricSpace metric_from_line(const std::vector<double>& xs);
PointedSpace make_pointed(MetricSpace space, int base);

// Entrywise d^alpha, alpha in (0,1]. Subadditivity of t^alpha keeps the
// triangle inequality.
MetricSpace holder_transform(const MetricSpace& m, double alpha);

// Entrywise min(d, 1).
MetricSpace truncate_metric(const MetricSpace& m);

// xi(x) = max(d(x, e), 1). Always >= 1, equals 1 at the base point,
// and is 1-Lipschitz.
ScalarField base_weight(const PointedSpace& p);

// Indices z with r1 < d(z, center) < r2, strict on both sides.
std::vector<int> annulus_indices(const PointedSpace& p, int center, double r1, double r2);

std::vector<std::string> default_labels(int n);

}  // namespace lipkit
