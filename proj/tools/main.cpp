// Command-line front end: loads spaces, fields and operators, dispatches
// to the library, and writes deterministic JSON/CSV reports.
//
// Exit codes: 0 success, 1 input or usage error, 2 a verifying command
// found a violated property.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lipkit/classify.hpp"
#include "lipkit/derived.hpp"
#include "lipkit/io.hpp"
#include "lipkit/lipschitz.hpp"
#include "lipkit/order_iso.hpp"
#include "lipkit/verify.hpp"

namespace {

using lipkit::Json;

void emit(const Json& report, const std::string& out_path) {
    if (out_path.empty())
        std::cout << lipkit::dump_report(report);
    else
        lipkit::write_report(report, out_path);
}

Json witness_to_json(const lipkit::WitnessReport& w) {
    Json j;
    j["property"] = w.property;
    j["verdict"] = w.verdict;
    if (w.witness) j["witness"] = *w.witness;
    j["witness_attained"] = w.witness_attained;
    j["witness_vacuous"] = w.witness_vacuous;
    if (w.counterexample) j["counterexample"] = {w.counterexample->first, w.counterexample->second};
    if (w.horizon) j["horizon"] = *w.horizon;
    if (!w.note.empty()) j["note"] = w.note;
    return j;
}

lipkit::HorizonFamily parse_family(const std::string& spec) {
    lipkit::HorizonFamily fam;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const size_t eq = item.find('=');
        if (eq == std::string::npos) throw std::runtime_error("family spec needs key=value pairs");
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        if (key == "name")
            fam.name = value;
        else if (key == "b" || key == "a")
            fam.param = std::stod(value);
        else if (key == "base")
            fam.base_index = std::stoi(value);
        else if (key == "file") {
            std::ifstream in(value);
            if (!in) throw std::runtime_error("cannot open family file " + value);
            double x;
            while (in >> x) fam.file_points.push_back(x);
            fam.name = "file";
        } else
            throw std::runtime_error("unknown family key '" + key + "'");
    }
    if (fam.name.empty()) throw std::runtime_error("family spec needs name=...");
    return fam;
}

// Runs `command` once per probe field: CSV lines id,value on stdin, the
// transformed field as CSV on stdout.
lipkit::ScalarField pipe_through_command(const std::string& command,
                                         const lipkit::MetricSpace& space,
                                         const lipkit::ScalarField& f) {
    int to_child[2], from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0) throw std::runtime_error("pipe failed");
    const pid_t pid = fork();
    if (pid < 0) throw std::runtime_error("fork failed");
    if (pid == 0) {
        dup2(to_child[0], STDIN_FILENO);
        dup2(from_child[1], STDOUT_FILENO);
        close(to_child[0]);
        close(to_child[1]);
        close(from_child[0]);
        close(from_child[1]);
        execl("/bin/sh", "sh", "-c", command.c_str(), nullptr);
        _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    {
        std::string payload;
        for (int i = 0; i < space.size(); ++i) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", f[i]);
            payload += space.labels[static_cast<size_t>(i)] + "," + buf + "\n";
        }
        size_t off = 0;
        while (off < payload.size()) {
            const ssize_t w = write(to_child[1], payload.data() + off, payload.size() - off);
            if (w <= 0) break;
            off += static_cast<size_t>(w);
        }
    }
    close(to_child[1]);
    std::string reply;
    char buf[4096];
    ssize_t got;
    while ((got = read(from_child[0], buf, sizeof(buf))) > 0) reply.append(buf, static_cast<size_t>(got));
    close(from_child[0]);
    int status = 0;
    waitpid(pid, &status, 0);
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
        throw std::runtime_error("oracle command failed");

    lipkit::ScalarField out(static_cast<size_t>(space.size()), 0.0);
    std::vector<bool> seen(static_cast<size_t>(space.size()), false);
    std::stringstream ss(reply);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty() || line == "id,value") continue;
        const size_t comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("oracle output is not id,value CSV");
        const int idx = space.index_of(line.substr(0, comma));
        if (idx < 0) throw std::runtime_error("oracle output names an unknown id");
        out[idx] = std::stod(line.substr(comma + 1));
        seen[static_cast<size_t>(idx)] = true;
    }
    for (int i = 0; i < space.size(); ++i)
        if (!seen[static_cast<size_t>(i)]) throw std::runtime_error("oracle output is missing an id");
    return out;
}

Json net_to_json(const lipkit::PointedSpace& space, const lipkit::NetDecomposition& net) {
    Json j;
    j["C1"] = net.C1;
    j["C_k"] = net.constants.C;
    j["K"] = net.K;
    j["gamma"] = Json::array();
    for (int g : net.gamma) j["gamma"].push_back(space.space.labels[static_cast<size_t>(g)]);
    j["checks"] = Json::object();
    for (const lipkit::NetCheck& chk : net.checks) {
        Json c;
        c["pass"] = chk.pass;
        c["vacuous"] = chk.vacuous;
        if (chk.i >= 0) {
            Json pair = Json::array();
            pair.push_back(space.space.labels[static_cast<size_t>(chk.i)]);
            if (chk.j >= 0) pair.push_back(space.space.labels[static_cast<size_t>(chk.j)]);
            c["witness"] = pair;
        }
        c["margin"] = chk.margin;
        j["checks"][chk.name] = std::move(c);
    }
    j["weight_ratio_seminorms"] = {net.lip_xi_over_zeta, net.lip_zeta_over_xi};
    if (!net.notes.empty()) j["notes"] = net.notes;
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"finite pointed metric spaces: seminorms, derived metrics, classifiers, order isomorphisms"};
    app.require_subcommand(1);

    std::string space_path, space_y_path, field_path, subset_path, operator_path, family_spec;
    std::string base_label, format_hint = "auto", out_path, method = "mcshane", command;
    std::string property = "expansive_at_inf", horizons_csv = "10,20,40", direction = "forward";
    double alpha = 1.0, epsilon = 0.5, tol = 1e-9, lip_bound = -1.0, gap_r = -1.0, growth = 1.5;
    int k_max = 3, trials = 200;
    uint64_t seed = 7;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--base", base_label, "base point label");
        cmd->add_option("--format", format_hint, "space format: auto|json|matrix|coordinates");
        cmd->add_option("--out", out_path, "output path (stdout when omitted)");
        cmd->add_option("--tol", tol, "numeric tolerance")->check(CLI::PositiveNumber);
    };

    CLI::App* c_validate = app.add_subcommand("validate", "validate a space file");
    c_validate->add_option("--space", space_path)->required();
    add_common(c_validate);

    CLI::App* c_classify = app.add_subcommand("classify", "classify a space or a family");
    c_classify->add_option("--space", space_path);
    c_classify->add_option("--family", family_spec, "e.g. name=doubled,b=2");
    c_classify->add_option("--property", property);
    c_classify->add_option("--epsilon", epsilon);
    c_classify->add_option("--horizons", horizons_csv);
    c_classify->add_option("--growth", growth);
    add_common(c_classify);

    CLI::App* c_derive = app.add_subcommand("derive", "derived metric, comparison ratio, net certificate");
    c_derive->add_option("--space", space_path)->required();
    c_derive->add_option("--k-max", k_max)->check(CLI::PositiveNumber);
    add_common(c_derive);

    CLI::App* c_extend = app.add_subcommand("extend", "extend a partial field from a subset");
    c_extend->add_option("--space", space_path)->required();
    c_extend->add_option("--subset", subset_path)->required();
    c_extend->add_option("--field", field_path, "values on the subset (id,value)")->required();
    c_extend->add_option("--method", method, "mcshane|littlelip");
    c_extend->add_option("--alpha", alpha);
    c_extend->add_option("--lip-bound", lip_bound, "K (mcshane) or C (littlelip); inferred when omitted");
    c_extend->add_option("--gap", gap_r, "separation certificate r for littlelip");
    add_common(c_extend);

    CLI::App* c_seminorm = app.add_subcommand("seminorm", "seminorm and modulus profile of a field");
    c_seminorm->add_option("--space", space_path)->required();
    c_seminorm->add_option("--field", field_path)->required();
    c_seminorm->add_option("--alpha", alpha);
    add_common(c_seminorm);

    CLI::App* c_iso = app.add_subcommand("iso-check", "order-isomorphism check of an operator or command");
    c_iso->add_option("--space", space_path)->required();
    c_iso->add_option("--operator", operator_path, "operator JSON file");
    c_iso->add_option("--command", command, "external oracle command (field CSV on stdio)");
    c_iso->add_option("--trials", trials);
    c_iso->add_option("--seed", seed);
    add_common(c_iso);

    CLI::App* c_terr = app.add_subcommand("territories", "chain components at threshold epsilon");
    c_terr->add_option("--space", space_path)->required();
    c_terr->add_option("--epsilon", epsilon)->required();
    add_common(c_terr);

    CLI::App* c_scan = app.add_subcommand("family-scan", "property trend across family horizons");
    c_scan->add_option("--family", family_spec)->required();
    c_scan->add_option("--property", property);
    c_scan->add_option("--horizons", horizons_csv);
    c_scan->add_option("--epsilon", epsilon);
    c_scan->add_option("--growth", growth);
    add_common(c_scan);

    CLI::App* c_verify = app.add_subcommand("verify-suite", "run the full inequality battery");
    c_verify->add_option("--seed", seed);
    c_verify->add_option("--trials", trials);
    add_common(c_verify);

    CLI11_PARSE(app, argc, argv);

    if (c_validate->parsed()) {
        Json report;
        try {
            const lipkit::PointedSpace p = lipkit::load_space(space_path, format_hint, base_label);
            report["valid"] = true;
            report["points"] = p.size();
            report["base"] = p.space.labels[static_cast<size_t>(p.base)];
            emit(report, out_path);
            return 0;
        } catch (const std::exception& e) {
            report["valid"] = false;
            report["error"] = e.what();
            emit(report, out_path);
            return 1;
        }
    }

    if (c_classify->parsed() || c_scan->parsed()) {
        if (!family_spec.empty()) {
            const lipkit::HorizonFamily fam = parse_family(family_spec);
            std::vector<int> horizons;
            std::stringstream ss(horizons_csv);
            std::string item;
            while (std::getline(ss, item, ',')) horizons.push_back(std::stoi(item));
            lipkit::TrendParams params;
            params.epsilon = epsilon;
            params.growth_factor = growth;
            const lipkit::TrendReport trend = lipkit::family_trend(fam, property, horizons, params);
            Json report;
            report["property"] = trend.property;
            report["verdict"] = trend.verdict;
            report["heuristic"] = trend.heuristic;
            report["per_horizon"] = Json::array();
            for (const auto& w : trend.per_horizon) report["per_horizon"].push_back(witness_to_json(w));
            emit(report, out_path);
            return 0;
        }
        const lipkit::PointedSpace p = lipkit::load_space(space_path, format_hint, base_label);
        Json report = Json::array();
        if (property == "expansive")
            report.push_back(witness_to_json(lipkit::expansive_witness(p)));
        else if (property == "expansive_at_inf")
            report.push_back(witness_to_json(lipkit::expansive_at_inf_witness(p)));
        else if (property == "almost_expansive")
            report.push_back(witness_to_json(lipkit::almost_expansive_witness(p, epsilon)));
        else if (property == "separation_gap") {
            lipkit::WitnessReport w;
            w.property = property;
            w.verdict = "holds";
            w.witness = lipkit::separation_gap(p.space);
            report.push_back(witness_to_json(w));
        } else if (property == "proximal_profile") {
            const lipkit::ProximalProfile prof =
                lipkit::proximal_profile(p.space, lipkit::decile_scales(p.space));
            Json j;
            j["property"] = property;
            j["proximally_compact"] = prof.proximally_compact;
            j["note"] = "every finite space is proximally compact; see family trends for the diagnostic";
            j["rows"] = Json::array();
            for (const auto& row : prof.rows)
                j["rows"].push_back({{"epsilon", row.eps},
                                     {"separated", row.separated_count},
                                     {"clustered", row.clustered_count}});
            report.push_back(std::move(j));
        } else
            throw std::runtime_error("unknown property '" + property + "'");
        emit(report, out_path);
        return 0;
    }

    if (c_derive->parsed()) {
        const lipkit::PointedSpace p = lipkit::load_space(space_path, format_hint, base_label);
        const lipkit::MetricSpace dp = lipkit::dprime_matrix(p);
        const lipkit::SymMatrix rho = lipkit::rho_matrix(p);
        const lipkit::AEConstants constants = lipkit::ae_constants(p, k_max);
        const lipkit::NetDecomposition net = lipkit::build_net(p, constants);
        Json cert = net_to_json(p, net);
        cert["vacuous_levels"] = Json::array();
        for (bool v : constants.vacuous) cert["vacuous_levels"].push_back(v);
        if (out_path.empty()) {
            emit(cert, "");
            return 0;
        }
        std::filesystem::create_directories(out_path);
        lipkit::write_matrix_csv(p.space.labels, dp, out_path + "/dprime.csv");
        {
            lipkit::MetricSpace rho_m;
            rho_m.labels = p.space.labels;
            rho_m.dist = rho.a;
            lipkit::write_matrix_csv(p.space.labels, rho_m, out_path + "/rho.csv");
        }
        lipkit::write_report(cert, out_path + "/certificate.json");
        return 0;
    }

    if (c_extend->parsed()) {
        const lipkit::PointedSpace p = lipkit::load_space(space_path, format_hint, base_label);
        const std::vector<int> subset = lipkit::load_subset(subset_path, p.space);
        // The field file carries values on the subset only.
        std::vector<double> f0;
        {
            lipkit::MetricSpace sub;
            for (int s : subset) sub.labels.push_back(p.space.labels[static_cast<size_t>(s)]);
            sub.dist.assign(subset.size() * subset.size(), 0.0);
            const lipkit::ScalarField f = lipkit::load_field(field_path, sub);
            f0 = f.values;
        }
        lipkit::ExtensionResult ext;
        if (method == "mcshane") {
            double K = lip_bound;
            if (K < 0.0) {
                K = 0.0;
                for (size_t a = 0; a < subset.size(); ++a)
                    for (size_t b = a + 1; b < subset.size(); ++b)
                        K = std::max(K, std::abs(f0[a] - f0[b]) /
                                            std::pow(p.d(subset[a], subset[b]), alpha));
            }
            ext = lipkit::mcshane_extend(p.space, subset, f0, K, alpha);
        } else if (method == "littlelip") {
            double r = gap_r;
            if (r < 0.0) {
                r = std::numeric_limits<double>::infinity();
                for (size_t a = 0; a < subset.size(); ++a)
                    for (size_t b = a + 1; b < subset.size(); ++b)
                        r = std::min(r, p.d(subset[a], subset[b]));
                r = std::isfinite(r) ? r / 2.0 : 1.0;
            }
            double C = lip_bound;
            if (C < 0.0) {
                C = 0.0;
                for (size_t a = 0; a < subset.size(); ++a)
                    for (size_t b = a + 1; b < subset.size(); ++b)
                        C = std::max(C, std::abs(f0[a] - f0[b]) /
                                            std::pow(p.d(subset[a], subset[b]), alpha));
                if (C == 0.0) C = 1.0;
            }
            ext = lipkit::littlelip_extend_separated(p.space, subset, f0, alpha, C, r);
        } else
            throw std::runtime_error("unknown extension method '" + method + "'");

        Json cert;
        cert["operator"] = ext.operator_name;
        cert["constants"] = Json::object();
        for (const auto& [k, v] : ext.constants) cert["constants"][k] = v;
        cert["restriction_max_error"] = ext.restriction_max_error;
        cert["lip_constant_before"] = ext.lip_constant_before;
        cert["lip_constant_after"] = ext.lip_constant_after;
        if (out_path.empty()) {
            emit(cert, "");
        } else {
            std::filesystem::create_directories(out_path);
            lipkit::write_field_csv(p.space.labels, ext.field, out_path + "/extension.csv");
            lipkit::write_report(cert, out_path + "/certificate.json");
        }
        return 0;
    }

    if (c_seminorm->parsed()) {
        const lipkit::PointedSpace p = lipkit::load_space(space_path, format_hint, base_label);
        const lipkit::ScalarField f = lipkit::load_field(field_path, p.space);
        const lipkit::ModulusProfile prof =
            lipkit::modulus_profile(p.space, f, alpha, lipkit::decile_scales(p.space));
        Json report;
        report["alpha"] = alpha;
        report["lip_constant"] = lipkit::lip_constant(p.space, f, alpha);
        report["scales"] = prof.scales;
        report["ratios"] = prof.ratios;
        emit(report, out_path);
        return 0;
    }

    if (c_iso->parsed()) {
        const lipkit::PointedSpace p = lipkit::load_space(space_path, format_hint, base_label);
        lipkit::FieldOracle oracle;
        if (!operator_path.empty()) {
            const lipkit::CompositionOperator op = lipkit::load_operator(operator_path, p.space);
            oracle = [op](const lipkit::ScalarField& f) { return lipkit::apply_operator(op, f); };
        } else if (!command.empty()) {
            const lipkit::MetricSpace space = p.space;
            const std::string cmd = command;
            oracle = [space, cmd](const lipkit::ScalarField& f) {
                return pipe_through_command(cmd, space, f);
            };
        } else
            throw std::runtime_error("iso-check needs --operator or --command");

        const lipkit::OrderIsoVerdict verdict = lipkit::check_order_iso(oracle, p.size(), trials, seed);
        std::vector<double> grid;
        for (int g = 0; g <= 4; ++g) grid.push_back(-4.0 + 2.0 * g);
        const lipkit::FactorResult factored = lipkit::factor_operator(oracle, p.size(), grid);
        Json report;
        report["order_isomorphism"] = verdict.pass;
        report["trials"] = verdict.trials;
        if (!verdict.failure.empty()) report["failure"] = verdict.failure;
        report["factorable"] = factored.ok();
        if (!factored.ok())
            report["inconsistency"] = factored.inconsistency;
        else
            report["recovered_operator"] = lipkit::operator_to_json(*factored.op, p.space.labels);
        emit(report, out_path);
        return verdict.pass && factored.ok() ? 0 : 2;
    }

    if (c_terr->parsed()) {
        const lipkit::PointedSpace p = lipkit::load_space(space_path, format_hint, base_label);
        const lipkit::TerritoryDecomposition dec = lipkit::ofarrell_decompose(p.space, epsilon);
        Json report;
        report["epsilon"] = epsilon;
        report["components"] = dec.component_count;
        report["step_diameters"] = dec.step_diameter;
        report["step_bounded"] = dec.step_bounded;
        Json members = Json::array();
        for (int i = 0; i < p.size(); ++i) members.push_back(dec.component_of[static_cast<size_t>(i)]);
        report["component_of"] = std::move(members);
        emit(report, out_path);
        return 0;
    }

    if (c_verify->parsed()) {
        const std::vector<lipkit::CheckResult> results = lipkit::run_verify_suite(seed, trials);
        Json report;
        report["seed"] = seed;
        report["trials"] = trials;
        report["checks"] = Json::array();
        bool all = true;
        for (const auto& c : results) {
            Json j;
            j["name"] = c.name;
            j["pass"] = c.pass;
            j["cases"] = c.cases;
            j["violations"] = c.violations;
            if (!c.detail.empty()) j["detail"] = c.detail;
            report["checks"].push_back(std::move(j));
            all = all && c.pass;
        }
        report["all_pass"] = all;
        emit(report, out_path);
        return all ? 0 : 2;
    }

    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
