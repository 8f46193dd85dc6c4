#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lipkit/metric.hpp"
#include "lipkit/order_iso.hpp"

namespace lipkit {

using Json = nlohmann::ordered_json;

// Space input formats, all routed through validate_metric:
//   coordinates: CSV with header id,x1,...,xk; Euclidean distances
//   matrix:      CSV with labels in the first row and column
//   json:        {"labels": [...], "dist": [[...]], "base": "<label>"}
// The base point comes from the JSON "base" key, the base_label argument,
// a point labeled "e", or defaults to the first point.
PointedSpace load_space(const std::string& path, const std::string& format_hint = "auto",
                        const std::string& base_label = "");

// CSV with header id,value, aligned against the space's labels.
ScalarField load_field(const std::string& path, const MetricSpace& space);

// CSV of ids, one per line (a header line "id" is allowed).
std::vector<int> load_subset(const std::string& path, const MetricSpace& space);

CompositionOperator load_operator(const std::string& path, const MetricSpace& space);
Json operator_to_json(const CompositionOperator& op, const std::vector<std::string>& y_labels);

// Deterministic serialization: insertion-ordered keys, floats at 17
// significant digits, newline-terminated. Same inputs, same bytes.
std::string dump_report(const Json& report);
void write_report(const Json& report, const std::string& path);

void write_matrix_csv(const std::vector<std::string>& labels, const MetricSpace& m,
                      const std::string& path);
std::string matrix_csv_string(const std::vector<std::string>& labels,
                              const std::vector<double>& dist);
void write_field_csv(const std::vector<std::string>& labels, const ScalarField& f,
                     const std::string& path);

std::string format_double(double v);

}  // namespace lipkit
