#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "lipkit/derived.hpp"
#include "lipkit/io.hpp"
#include "lipkit/random.hpp"

using namespace lipkit;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() / ("lipkit_io_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void put(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("coordinate CSV loads with Euclidean distances") {
    TempDir tmp;
    put(tmp.file("pts.csv"), "id,x1\na,0\nb,1\nc,2\n");
    const PointedSpace p = load_space(tmp.file("pts.csv"));
    CHECK(p.size() == 3);
    CHECK(p.d(0, 2) == doctest::Approx(2.0));
    CHECK(p.base == 0);
}

TEST_CASE("matrix CSV round trips through the writer") {
    TempDir tmp;
    Rng rng(77);
    const MetricSpace m = random_metric(rng, 5, 3.0);
    write_matrix_csv(m.labels, m, tmp.file("m.csv"));
    const PointedSpace back = load_space(tmp.file("m.csv"), "matrix");
    REQUIRE(back.size() == 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(back.d(i, j) == m.d(i, j));
}

TEST_CASE("asymmetric matrix entries are named") {
    TempDir tmp;
    put(tmp.file("bad.csv"), ",a,b\na,0,1\nb,2,0\n");
    CHECK_THROWS_WITH_AS(static_cast<void>(load_space(tmp.file("bad.csv"))),
                         doctest::Contains("asymmetry"), std::runtime_error);
}

TEST_CASE("JSON space resolves the base label") {
    TempDir tmp;
    put(tmp.file("s.json"),
        R"({"labels": ["e", "p", "q"], "dist": [[0,2,4],[2,0,2],[4,2,0]], "base": "p"})");
    const PointedSpace p = load_space(tmp.file("s.json"));
    CHECK(p.base == 1);
    // Explicit base beats the embedded one; label "e" is the fallback.
    CHECK(load_space(tmp.file("s.json"), "auto", "q").base == 2);
    put(tmp.file("s2.json"), R"({"labels": ["x", "e"], "dist": [[0,1],[1,0]]})");
    CHECK(load_space(tmp.file("s2.json")).base == 1);
}

TEST_CASE("field and subset files align with space labels") {
    TempDir tmp;
    put(tmp.file("s.json"), R"({"labels": ["a", "b"], "dist": [[0,1],[1,0]]})");
    const PointedSpace p = load_space(tmp.file("s.json"));
    put(tmp.file("f.csv"), "id,value\nb,2.5\na,-1\n");
    const ScalarField f = load_field(tmp.file("f.csv"), p.space);
    CHECK(f[0] == -1.0);
    CHECK(f[1] == 2.5);
    put(tmp.file("missing.csv"), "id,value\na,1\n");
    CHECK_THROWS(static_cast<void>(load_field(tmp.file("missing.csv"), p.space)));
    put(tmp.file("sub.csv"), "id\nb\n");
    CHECK(load_subset(tmp.file("sub.csv"), p.space) == std::vector<int>{1});
}

TEST_CASE("operator JSON round trips") {
    TempDir tmp;
    const MetricSpace m = metric_from_line({0.0, 1.0});
    CompositionOperator op;
    op.phi = {1, 0};
    op.maps = {MonotoneMap{{0.0, 1.0}, {0.0, 2.0}, 2.0, 2.0},
               MonotoneMap{{0.0, 1.0}, {1.0, 2.0}, 1.0, 1.0}};
    write_report(operator_to_json(op, m.labels), tmp.file("op.json"));
    const CompositionOperator back = load_operator(tmp.file("op.json"), m);
    CHECK(back.phi == op.phi);
    CHECK(back.maps[0].values == op.maps[0].values);
    CHECK(back.maps[1].left_slope == 1.0);
}

TEST_CASE("reports are deterministic and numbers survive the round trip") {
    Json j;
    j["b_first"] = 1.0 / 3.0;
    j["a_second"] = Json::array({0.1, 2e-17, 123456789.123456789});
    j["nested"] = Json::object();
    j["nested"]["inf"] = std::numeric_limits<double>::infinity();
    const std::string once = dump_report(j);
    const std::string twice = dump_report(j);
    CHECK(once == twice);
    // Insertion order is preserved, not sorted.
    CHECK(once.find("b_first") < once.find("a_second"));
    // 17 significant digits reparse to the same double.
    CHECK(std::stod("0.33333333333333331") == 1.0 / 3.0);
    CHECK(once.find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("empty report serializes as an empty object") {
    CHECK(dump_report(Json::object()) == "{}\n");
}
