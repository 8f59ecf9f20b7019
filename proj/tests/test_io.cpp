#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "dke/io.hpp"
#include "oracles.hpp"

using namespace dke;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("dke-test-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("format_double round-trips") {
    for (double v : {0.0, 1.0, 1.0 / 3.0, 1e-300, -2.5e17, 3.141592653589793}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("mms CSV round-trip is exact") {
    TempDir tmp;
    Rng rng(1);
    const auto mms = oracles::random_mms(rng, 8, 8, false);
    const auto path = tmp.path / "space.csv";
    write_mms_csv(path, mms);
    const auto back = read_mms_csv(path);
    CHECK((back.dist.array() == mms.dist.array()).all());
    CHECK((back.measure.array() == mms.measure.array()).all());
    CHECK(!fs::exists(tmp.path / "space.csv.tmp"));
}

TEST_CASE("mms JSON round-trip is exact and load_mms dispatches") {
    TempDir tmp;
    Rng rng(2);
    const auto mms = oracles::random_mms(rng, 5, 5, true);
    const auto path = tmp.path / "space.json";
    write_mms_json(path, mms);
    const auto back = load_mms(path);
    CHECK((back.dist.array() == mms.dist.array()).all());
    CHECK((back.measure.array() == mms.measure.array()).all());
    CHECK_THROWS_AS(load_mms(tmp.path / "space.yaml"), config_error);
}

TEST_CASE("malformed mms files raise config errors with the file name") {
    TempDir tmp;
    const auto path = tmp.path / "bad.csv";
    std::ofstream(path) << "# wrong header\n0,1\n1,0\n1,1\n";
    CHECK_THROWS_AS(read_mms_csv(path), config_error);
    std::ofstream(path, std::ios::trunc) << "# dke-mms v1 n=2\n0,1\n1,0,extra\n1,1\n";
    CHECK_THROWS_AS(read_mms_csv(path), config_error);
    std::ofstream(path, std::ios::trunc) << "# dke-mms v1 n=2\n0,x\n1,0\n1,1\n";
    try {
        read_mms_csv(path);
        CHECK(false);
    } catch (const config_error& e) {
        CHECK(std::string(e.what()).find("bad.csv") != std::string::npos);
    }
    // an invalid metric is rejected on load
    std::ofstream(path, std::ios::trunc) << "# dke-mms v1 n=2\n0,1\n2,0\n1,1\n";
    CHECK_THROWS_AS(read_mms_csv(path), validation_error);
}

TEST_CASE("spectrum, embedding, diagram, step and transform exports parse back") {
    TempDir tmp;
    Eigen::MatrixXd d(2, 2);
    d << 0, 1, 1, 0;
    Eigen::VectorXd mu(2);
    mu << 1, 4;
    const auto spec = eigendecompose(build_operator(make_mms(d, mu)));
    write_spectrum_json(tmp.path / "spec.json", spec);
    const auto js = nlohmann::json::parse(std::ifstream(tmp.path / "spec.json"));
    CHECK(js["eigenvalues"].size() == 2);
    CHECK(js["vectors"].size() == 2);
    CHECK(js["sign_rule"][0] == "mass_aligned");
    CHECK(js["sign_rule"][1] == "constant_aligned");

    write_eigenvalues_csv(tmp.path / "eig.csv", spec);
    std::ifstream eig(tmp.path / "eig.csv");
    std::string line;
    std::getline(eig, line);
    CHECK(line == "index,eigenvalue");
    std::getline(eig, line);
    CHECK(line.substr(0, 2) == "1,");
    CHECK(std::stod(line.substr(2)) == doctest::Approx(2.0).epsilon(1e-12));

    const auto emb = embed(spec, 2);
    write_embedding_csv(tmp.path / "emb.csv", emb);
    write_embedding_json(tmp.path / "emb.json", emb);
    const auto je = nlohmann::json::parse(std::ifstream(tmp.path / "emb.json"));
    CHECK(je["k"] == 2);
    CHECK(je["rows"].size() == 2);
    CHECK(je["rows"][0][0].get<double>() == doctest::Approx(1.0));
    std::ifstream csv(tmp.path / "emb.csv");
    std::getline(csv, line);
    CHECK(line == "re(alpha1),im(alpha1),re(alpha2),im(alpha2)");

    GradedDiagram diagram;
    diagram.bars = {{0, 0.0, std::numeric_limits<double>::infinity()}, {1, 0.5, 1.5}};
    write_diagram_csv(tmp.path / "diag.csv", diagram);
    std::ifstream dcsv(tmp.path / "diag.csv");
    std::getline(dcsv, line);
    CHECK(line == "dim,birth,death");
    std::getline(dcsv, line);
    CHECK(line == "0,0,inf");

    StepFunction sf{{0.0, 1.0, 2.0}, {1.0, 3.0}};
    write_step_csv(tmp.path / "step.csv", sf);
    std::ifstream scsv(tmp.path / "step.csv");
    std::getline(scsv, line);
    CHECK(line == "breakpoint,value");
    std::getline(scsv, line);
    CHECK(line == "0,1");

    const auto cx = std::make_shared<const SimplicialComplex>(
        make_complex(2, {{0, 1}}));
    const auto t = ipkt(emb, cx, direction_grid(2, 3, 5));
    write_transform_json(tmp.path / "t.json", t);
    const auto jt = nlohmann::json::parse(std::ifstream(tmp.path / "t.json"));
    CHECK(jt["kind"] == "ipkt");
    CHECK(jt["entries"].size() == 3);
    CHECK(jt["entries"][0]["direction"].size() == 4);
}
