#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lipkit/classify.hpp"
#include "lipkit/derived.hpp"
#include "lipkit/lipschitz.hpp"
#include "lipkit/metric.hpp"
#include "lipkit/order_iso.hpp"
#include "lipkit/verify.hpp"

namespace py = pybind11;
using namespace lipkit;

namespace {

std::vector<std::vector<double>> matrix_rows(const std::vector<double>& flat, int n) {
    std::vector<std::vector<double>> rows(static_cast<size_t>(n),
                                          std::vector<double>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = flat[static_cast<size_t>(i) * n + j];
    return rows;
}

PointedSpace pointed_from(const std::vector<std::vector<double>>& matrix, int base,
                          std::vector<std::string> labels) {
    return make_pointed(make_metric(matrix, std::move(labels)), base);
}

py::dict witness_dict(const WitnessReport& w) {
    py::dict d;
    d["property"] = w.property;
    d["verdict"] = w.verdict;
    if (w.witness) d["witness"] = *w.witness;
    d["witness_attained"] = w.witness_attained;
    d["witness_vacuous"] = w.witness_vacuous;
    if (w.horizon) d["horizon"] = *w.horizon;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Seminorms, derived metrics, classifiers and weighted-composition "
              "operators on finite pointed metric spaces.";

    py::register_exception<NetCertificationError>(m, "NetCertificationError");

    m.def(
        "validate_metric",
        [](const std::vector<std::vector<double>>& matrix) {
            const MetricValidation v = validate_metric(matrix);
            py::dict d;
            d["valid"] = v.ok();
            if (!v.ok()) {
                d["axiom"] = v.violation->axiom;
                d["indices"] = py::make_tuple(v.violation->i, v.violation->j, v.violation->k);
                d["message"] = v.violation->message;
            }
            return d;
        },
        py::arg("matrix"));

    m.def(
        "holder_transform",
        [](const std::vector<std::vector<double>>& matrix, double alpha) {
            const MetricSpace out = holder_transform(make_metric(matrix), alpha);
            return matrix_rows(out.dist, out.size());
        },
        py::arg("matrix"), py::arg("alpha"));

    m.def(
        "truncate_metric",
        [](const std::vector<std::vector<double>>& matrix) {
            const MetricSpace out = truncate_metric(make_metric(matrix));
            return matrix_rows(out.dist, out.size());
        },
        py::arg("matrix"));

    m.def(
        "base_weight",
        [](const std::vector<std::vector<double>>& matrix, int base) {
            return base_weight(pointed_from(matrix, base, {})).values;
        },
        py::arg("matrix"), py::arg("base") = 0);

    m.def(
        "lip_constant",
        [](const std::vector<std::vector<double>>& matrix, const std::vector<double>& values,
           double alpha) { return lip_constant(make_metric(matrix), ScalarField(values), alpha); },
        py::arg("matrix"), py::arg("values"), py::arg("alpha") = 1.0);

    m.def(
        "mcshane_extend",
        [](const std::vector<std::vector<double>>& matrix, const std::vector<int>& subset,
           const std::vector<double>& f0, double K, double alpha) {
            const ExtensionResult ext = mcshane_extend(make_metric(matrix), subset, f0, K, alpha);
            py::dict d;
            d["field"] = ext.field.values;
            d["lip_constant_after"] = ext.lip_constant_after;
            return d;
        },
        py::arg("matrix"), py::arg("subset"), py::arg("f0"), py::arg("K"), py::arg("alpha") = 1.0);

    m.def(
        "rho_matrix",
        [](const std::vector<std::vector<double>>& matrix, int base) {
            const SymMatrix rho = rho_matrix(pointed_from(matrix, base, {}));
            return matrix_rows(rho.a, rho.n);
        },
        py::arg("matrix"), py::arg("base") = 0);

    m.def(
        "dprime_matrix",
        [](const std::vector<std::vector<double>>& matrix, int base) {
            const MetricSpace dp = dprime_matrix(pointed_from(matrix, base, {}));
            return matrix_rows(dp.dist, dp.size());
        },
        py::arg("matrix"), py::arg("base") = 0);

    m.def(
        "dprime_pair_oracle",
        [](const std::vector<std::vector<double>>& matrix, int base, int p, int q) {
            return dprime_pair_oracle(pointed_from(matrix, base, {}), p, q);
        },
        py::arg("matrix"), py::arg("base"), py::arg("p"), py::arg("q"));

    m.def(
        "scale_iso_lip",
        [](const std::vector<std::vector<double>>& matrix, int base,
           const std::vector<double>& values, const std::string& direction) {
            return scale_iso_lip(pointed_from(matrix, base, {}), ScalarField(values),
                                 direction == "inverse" ? Direction::inverse : Direction::forward)
                .values;
        },
        py::arg("matrix"), py::arg("base"), py::arg("values"), py::arg("direction") = "forward");

    m.def(
        "build_net",
        [](const std::vector<std::vector<double>>& matrix, int base, int k_max) {
            const PointedSpace p = pointed_from(matrix, base, {});
            const AEConstants a = ae_constants(p, k_max);
            const NetDecomposition net = build_net(p, a);
            py::dict d;
            d["C1"] = net.C1;
            d["C_k"] = net.constants.C;
            d["K"] = net.K;
            d["gamma"] = net.gamma;
            d["assignment"] = net.assignment;
            d["zeta"] = net.zeta.values;
            py::dict checks;
            for (const NetCheck& c : net.checks) {
                py::dict cd;
                cd["pass"] = c.pass;
                cd["margin"] = c.margin;
                checks[c.name.c_str()] = cd;
            }
            d["checks"] = checks;
            return d;
        },
        py::arg("matrix"), py::arg("base") = 0, py::arg("k_max") = 3);

    m.def(
        "separation_gap",
        [](const std::vector<std::vector<double>>& matrix) {
            return separation_gap(make_metric(matrix));
        },
        py::arg("matrix"));

    m.def(
        "expansive_at_inf_witness",
        [](const std::vector<std::vector<double>>& matrix, int base) {
            return witness_dict(expansive_at_inf_witness(pointed_from(matrix, base, {})));
        },
        py::arg("matrix"), py::arg("base") = 0);

    m.def(
        "almost_expansive_witness",
        [](const std::vector<std::vector<double>>& matrix, int base, double eps) {
            return witness_dict(almost_expansive_witness(pointed_from(matrix, base, {}), eps));
        },
        py::arg("matrix"), py::arg("base"), py::arg("eps"));

    m.def(
        "ofarrell_decompose",
        [](const std::vector<std::vector<double>>& matrix, double eps) {
            const TerritoryDecomposition dec = ofarrell_decompose(make_metric(matrix), eps);
            py::dict d;
            d["components"] = dec.component_count;
            d["component_of"] = dec.component_of;
            d["step_diameters"] = dec.step_diameter;
            return d;
        },
        py::arg("matrix"), py::arg("eps"));

    m.def(
        "family_trend",
        [](const std::string& name, double param, const std::string& property,
           const std::vector<int>& horizons, double eps) {
            HorizonFamily fam;
            fam.name = name;
            fam.param = param;
            TrendParams params;
            params.epsilon = eps;
            const TrendReport rep = family_trend(fam, property, horizons, params);
            py::dict d;
            d["property"] = rep.property;
            d["verdict"] = rep.verdict;
            py::list rows;
            for (const WitnessReport& w : rep.per_horizon) rows.append(witness_dict(w));
            d["per_horizon"] = rows;
            return d;
        },
        py::arg("name"), py::arg("param"), py::arg("property"), py::arg("horizons"),
        py::arg("eps") = 0.5);

    py::class_<MonotoneMap>(m, "MonotoneMap")
        .def(py::init([](std::vector<double> breakpoints, std::vector<double> values,
                         double left_slope, double right_slope) {
                 MonotoneMap map{std::move(breakpoints), std::move(values), left_slope, right_slope};
                 map.validate();
                 return map;
             }),
             py::arg("breakpoints"), py::arg("values"), py::arg("left_slope") = 1.0,
             py::arg("right_slope") = 1.0)
        .def("__call__", &MonotoneMap::operator())
        .def("inverse", &MonotoneMap::inverse)
        .def_readonly("breakpoints", &MonotoneMap::breakpoints)
        .def_readonly("values", &MonotoneMap::values);

    py::class_<CompositionOperator>(m, "CompositionOperator")
        .def(py::init([](std::vector<int> phi, std::vector<MonotoneMap> maps) {
                 CompositionOperator op{std::move(phi), std::move(maps)};
                 op.validate();
                 return op;
             }),
             py::arg("phi"), py::arg("maps"))
        .def("apply",
             [](const CompositionOperator& op, const std::vector<double>& f) {
                 return apply_operator(op, ScalarField(f)).values;
             })
        .def("inverse", [](const CompositionOperator& op) { return invert_operator(op); })
        .def_readonly("phi", &CompositionOperator::phi);

    m.def(
        "factor_operator",
        [](const std::function<std::vector<double>(std::vector<double>)>& oracle, int n,
           const std::vector<double>& grid) {
            const FactorResult r = factor_operator(
                [&oracle](const ScalarField& f) { return ScalarField(oracle(f.values)); }, n, grid);
            py::dict d;
            d["ok"] = r.ok();
            if (r.ok())
                d["operator"] = *r.op;
            else
                d["inconsistency"] = r.inconsistency;
            return d;
        },
        py::arg("oracle"), py::arg("n"), py::arg("grid"));

    m.def(
        "check_order_iso",
        [](const std::function<std::vector<double>(std::vector<double>)>& oracle, int n, int trials,
           uint64_t seed) {
            const OrderIsoVerdict v = check_order_iso(
                [&oracle](const ScalarField& f) { return ScalarField(oracle(f.values)); }, n, trials,
                seed);
            py::dict d;
            d["pass"] = v.pass;
            d["trials"] = v.trials;
            if (!v.failure.empty()) d["failure"] = v.failure;
            return d;
        },
        py::arg("oracle"), py::arg("n"), py::arg("trials") = 100, py::arg("seed") = 7);

    m.def(
        "truncation_witness",
        [](const std::vector<double>& values, double a, double b, double c, double d) {
            return truncation_witness(ScalarField(values), a, b, c, d).values;
        },
        py::arg("values"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"));

    m.def(
        "verify_suite",
        [](uint64_t seed, int trials) {
            py::list rows;
            for (const CheckResult& c : run_verify_suite(seed, trials)) {
                py::dict d;
                d["name"] = c.name;
                d["pass"] = c.pass;
                d["cases"] = c.cases;
                d["violations"] = c.violations;
                rows.append(d);
            }
            return rows;
        },
        py::arg("seed") = 7, py::arg("trials") = 50);
}
