#include "lipkit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lipkit {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        size_t start = 0;
        while (start < cell.size() && cell[start] == ' ') ++start;
        cells.push_back(cell.substr(start));
    }
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

double parse_double(const std::string& s, const std::string& where) {
    try {
        size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("cannot parse number '" + s + "' in " + where);
    }
}

int resolve_base(const MetricSpace& m, const std::string& base_label) {
    if (!base_label.empty()) {
        const int idx = m.index_of(base_label);
        if (idx < 0) throw std::runtime_error("base label '" + base_label + "' not found");
        return idx;
    }
    const int e = m.index_of("e");
    return e >= 0 ? e : 0;
}

PointedSpace space_from_json(const std::string& path, const std::string& base_label) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("invalid JSON in " + path + ": " + e.what());
    }
    if (!j.contains("labels") || !j.contains("dist"))
        throw std::runtime_error(path + " must contain 'labels' and 'dist'");
    std::vector<std::string> labels = j["labels"].get<std::vector<std::string>>();
    std::vector<std::vector<double>> dist = j["dist"].get<std::vector<std::vector<double>>>();
    MetricValidation v = validate_metric(dist, labels);
    if (!v.ok()) throw std::runtime_error("invalid metric in " + path + ": " + v.violation->message);
    std::string base = base_label;
    if (base.empty() && j.contains("base")) base = j["base"].get<std::string>();
    const int b = resolve_base(*v.space, base);
    return make_pointed(*std::move(v.space), b);
}

}  // namespace

PointedSpace load_space(const std::string& path, const std::string& format_hint,
                        const std::string& base_label) {
    std::string hint = format_hint;
    if (hint == "auto") {
        if (path.size() > 5 && path.substr(path.size() - 5) == ".json") hint = "json";
    }
    if (hint == "json") return space_from_json(path, base_label);

    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) throw std::runtime_error(path + " is empty");
    const std::vector<std::string> header = split_csv_line(lines[0]);
    const bool coords = hint == "coordinates" || (hint == "auto" && header.size() >= 2 && header[0] == "id");

    if (coords) {
        std::vector<std::string> labels;
        std::vector<std::vector<double>> pts;
        for (size_t r = 1; r < lines.size(); ++r) {
            const auto cells = split_csv_line(lines[r]);
            if (cells.size() != header.size())
                throw std::runtime_error("row " + std::to_string(r) + " of " + path +
                                         " has the wrong cell count");
            labels.push_back(cells[0]);
            std::vector<double> p;
            for (size_t c = 1; c < cells.size(); ++c)
                p.push_back(parse_double(cells[c], path));
            pts.push_back(std::move(p));
        }
        MetricSpace m = metric_from_points(pts, std::move(labels));
        const int b = resolve_base(m, base_label);
        return make_pointed(std::move(m), b);
    }

    // Matrix CSV: first row and first column carry the labels.
    std::vector<std::string> labels(header.begin() + 1, header.end());
    const size_t n = labels.size();
    if (lines.size() != n + 1)
        throw std::runtime_error(path + " has " + std::to_string(lines.size() - 1) +
                                 " data rows, expected " + std::to_string(n));
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (size_t r = 0; r < n; ++r) {
        const auto cells = split_csv_line(lines[r + 1]);
        if (cells.size() != n + 1)
            throw std::runtime_error("row " + std::to_string(r + 1) + " of " + path +
                                     " has the wrong cell count");
        if (cells[0] != labels[r])
            throw std::runtime_error("row label '" + cells[0] + "' does not match column label '" +
                                     labels[r] + "'");
        for (size_t c = 0; c < n; ++c) dist[r][c] = parse_double(cells[c + 1], path);
    }
    MetricValidation v = validate_metric(dist, labels);
    if (!v.ok())
        throw std::runtime_error("invalid metric in " + path + " [" + v.violation->axiom +
                                 "]: " + v.violation->message);
    const int b = resolve_base(*v.space, base_label);
    return make_pointed(*std::move(v.space), b);
}

ScalarField load_field(const std::string& path, const MetricSpace& space) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) throw std::runtime_error(path + " is empty");
    size_t start = 0;
    if (!lines.empty() && split_csv_line(lines[0])[0] == "id") start = 1;
    ScalarField f(static_cast<size_t>(space.size()), 0.0);
    std::vector<bool> seen(static_cast<size_t>(space.size()), false);
    for (size_t r = start; r < lines.size(); ++r) {
        const auto cells = split_csv_line(lines[r]);
        if (cells.size() != 2) throw std::runtime_error("field row '" + lines[r] + "' needs id,value");
        const int idx = space.index_of(cells[0]);
        if (idx < 0) throw std::runtime_error("field id '" + cells[0] + "' is not a space label");
        f[idx] = parse_double(cells[1], path);
        seen[static_cast<size_t>(idx)] = true;
    }
    for (int i = 0; i < space.size(); ++i)
        if (!seen[static_cast<size_t>(i)])
            throw std::runtime_error("field is missing a value for '" + space.labels[static_cast<size_t>(i)] + "'");
    return f;
}

std::vector<int> load_subset(const std::string& path, const MetricSpace& space) {
    const std::vector<std::string> lines = read_lines(path);
    std::vector<int> subset;
    for (size_t r = 0; r < lines.size(); ++r) {
        const auto cells = split_csv_line(lines[r]);
        if (r == 0 && cells.size() == 1 && cells[0] == "id") continue;
        for (const std::string& c : cells) {
            if (c.empty()) continue;
            const int idx = space.index_of(c);
            if (idx < 0) throw std::runtime_error("subset id '" + c + "' is not a space label");
            subset.push_back(idx);
        }
    }
    return subset;
}

CompositionOperator load_operator(const std::string& path, const MetricSpace& space) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("invalid JSON in " + path + ": " + e.what());
    }
    CompositionOperator op;
    for (const auto& target : j.at("phi")) {
        const int idx = space.index_of(target.get<std::string>());
        if (idx < 0)
            throw std::runtime_error("operator target '" + target.get<std::string>() +
                                     "' is not a space label");
        op.phi.push_back(idx);
    }
    for (const auto& m : j.at("maps")) {
        MonotoneMap map;
        map.breakpoints = m.at("breakpoints").get<std::vector<double>>();
        map.values = m.at("values").get<std::vector<double>>();
        map.left_slope = m.at("left_slope").get<double>();
        map.right_slope = m.at("right_slope").get<double>();
        op.maps.push_back(std::move(map));
    }
    op.validate();
    return op;
}

Json operator_to_json(const CompositionOperator& op, const std::vector<std::string>& y_labels) {
    Json j;
    j["phi"] = Json::array();
    for (int v : op.phi) j["phi"].push_back(y_labels[static_cast<size_t>(v)]);
    j["maps"] = Json::array();
    for (const MonotoneMap& m : op.maps) {
        Json mj;
        mj["breakpoints"] = m.breakpoints;
        mj["values"] = m.values;
        mj["left_slope"] = m.left_slope;
        mj["right_slope"] = m.right_slope;
        j["maps"].push_back(std::move(mj));
    }
    return j;
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    if (std::isnan(v)) return "\"nan\"";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void dump_value(const Json& j, std::string& out, int indent) {
    const std::string pad(static_cast<size_t>(indent) * 2, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad + "  \"" + it.key() + "\": ";
                dump_value(it.value(), out, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[";
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ", ";
                first = false;
                dump_value(v, out, indent + 1);
            }
            out += "]";
            return;
        }
        case Json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string dump_report(const Json& report) {
    std::string out;
    dump_value(report, out, 0);
    out += "\n";
    return out;
}

void write_report(const Json& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << dump_report(report);
}

std::string matrix_csv_string(const std::vector<std::string>& labels,
                              const std::vector<double>& dist) {
    const size_t n = labels.size();
    std::string out;
    for (const std::string& l : labels) out += "," + l;
    out += "\n";
    for (size_t i = 0; i < n; ++i) {
        out += labels[i];
        for (size_t j = 0; j < n; ++j) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", dist[i * n + j]);
            out += ",";
            out += buf;
        }
        out += "\n";
    }
    return out;
}

void write_matrix_csv(const std::vector<std::string>& labels, const MetricSpace& m,
                      const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << matrix_csv_string(labels, m.dist);
}

void write_field_csv(const std::vector<std::string>& labels, const ScalarField& f,
                     const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "id,value\n";
    for (size_t i = 0; i < labels.size(); ++i) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", f.values[i]);
        out << labels[i] << "," << buf << "\n";
    }
}

}  // namespace lipkit
