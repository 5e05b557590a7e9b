#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "stabres/io.hpp"
#include "stabres/pipeline.hpp"

using namespace stabres;
namespace fs = std::filesystem;

namespace {

const char* kTinyFreeConfig = R"({
  "potential": {"v0": 0.0, "v1": 0.0, "sigma0": 4.0, "sigma1": 2.0, "x0": 4.92},
  "basis": {"L0": 20.0, "N": 40, "quadrature_points": 160, "parity": "full"},
  "eta_grid": {"start": -0.2, "stop": 0.2, "step": 0.05},
  "window": {"center": 0.05, "half_width": 0.02},
  "diabatize": {"refine": false},
  "benchmark": {"enabled": false}
})";

const char* kSmallResonanceConfig = R"({
  "potential": {"v0": 7.1, "v1": 4.5, "sigma0": 4.0, "sigma1": 2.0, "x0": 4.92},
  "basis": {"L0": 25.0, "N": 120, "quadrature_points": 480, "parity": "even"},
  "eta_grid": {"start": -0.32, "stop": -0.2, "step": 0.01},
  "window": {"center": 1.5388, "half_width": 0.05},
  "diabatize": {"min_points": 5, "refine": false},
  "benchmark": {"enabled": false}
})";

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("stabres_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
    static int counter;
};
int TempDir::counter = 0;

}  // namespace

TEST_CASE("config parsing validates fields") {
    CHECK_THROWS_AS(parse_config("{not json"), SchemaError);
    CHECK_THROWS_AS(parse_config("{}"), SchemaError);  // missing sections

    std::string bad = kTinyFreeConfig;
    bad.replace(bad.find("\"full\""), 6, "\"both\"");
    CHECK_THROWS_AS(parse_config(bad), InvalidArgument);

    bad = kTinyFreeConfig;
    bad.replace(bad.find("-0.2"), 4, "-1.9");  // eta below -1.75
    CHECK_THROWS_AS(parse_config(bad), InvalidArgument);

    bad = kTinyFreeConfig;
    bad.replace(bad.find("\"N\": 40"), 7, "\"N\": 1");
    CHECK_THROWS_AS(parse_config(bad), InvalidArgument);
}

TEST_CASE("config hash is canonical: formatting and key order do not matter") {
    const RunConfig a = parse_config(kTinyFreeConfig);
    const char* reordered = R"({
  "benchmark": {"enabled": false},
  "diabatize": {"refine": false},
  "window": {"half_width": 0.02, "center": 0.05},
  "eta_grid": {"step": 0.05, "start": -0.2, "stop": 0.2},
  "basis": {"parity": "full", "quadrature_points": 160, "N": 40, "L0": 20.0},
  "potential": {"x0": 4.92, "sigma1": 2.0, "sigma0": 4.0, "v1": 0.0, "v0": 0.0}
})";
    const RunConfig b = parse_config(reordered);
    CHECK(config_hash(a) == config_hash(b));

    std::string changed = kTinyFreeConfig;
    changed.replace(changed.find("20.0"), 4, "21.0");
    CHECK(config_hash(a) != config_hash(parse_config(changed)));
}

TEST_CASE("grid spec generates inclusive endpoints") {
    const GridSpec g{-1.0, 1.0, 0.01};
    const auto pts = g.points();
    CHECK(pts.size() == 201);
    CHECK(pts.front() == doctest::Approx(-1.0));
    CHECK(pts.back() == doctest::Approx(1.0));
}

TEST_CASE("cmd_stab output is deterministic byte-for-byte and carries metadata") {
    const RunConfig cfg = parse_config(kTinyFreeConfig);
    TempDir d1, d2;
    cmd_stab(cfg, d1.str(), 1);
    cmd_stab(cfg, d2.str(), 2);  // thread count must not change the bytes
    const std::string g1 = io::read_text_file(d1.str() + "/graph.csv");
    const std::string g2 = io::read_text_file(d2.str() + "/graph.csv");
    CHECK(g1 == g2);
    const std::string meta = io::read_text_file(d1.str() + "/graph.meta.json");
    CHECK(meta.find(config_hash(cfg)) != std::string::npos);
    CHECK(meta.find("\"x0\": 4.92") != std::string::npos);

    // free-particle curves obey the scaling law in the persisted table
    const StabilizationGraph g = io::read_graph_csv(d1.str() + "/graph.csv");
    const Eigen::VectorXd& e0 = g.energies[4];  // eta = 0 row of the -0.2..0.2 grid
    for (std::size_t i = 0; i < g.etas.size(); ++i) {
        const double f = std::exp(-2.0 * g.etas[i]);
        for (int k = 0; k < 5; ++k)
            CHECK(g.energies[i][k] == doctest::Approx(e0[k] * f).epsilon(1e-10));
    }
}

TEST_CASE("graph CSV reader reports schema violations with line numbers") {
    TempDir d;
    const std::string path = d.str() + "/bad.csv";

    io::write_text_file(path, "eta,E1,E2\n0.0,1.0,2.0\n0.1,oops,2.0\n");
    CHECK_THROWS_WITH_AS(static_cast<void>(io::read_graph_csv(path)),
                         doctest::Contains("line 3"), SchemaError);

    io::write_text_file(path, "eta,E1,E2\n0.0,1.0,2.0\n0.1,1.0\n");
    CHECK_THROWS_WITH_AS(static_cast<void>(io::read_graph_csv(path)),
                         doctest::Contains("line 3"), SchemaError);

    io::write_text_file(path, "no header\n");
    CHECK_THROWS_AS(static_cast<void>(io::read_graph_csv(path)), SchemaError);

    io::write_text_file(path, "eta,E1\n0.2,1.0\n0.1,1.0\n");  // eta not increasing
    CHECK_THROWS_AS(static_cast<void>(io::read_graph_csv(path)), SchemaError);
}

TEST_CASE("cmd_diabatize: empty graph gives an empty record list") {
    const RunConfig cfg = parse_config(kTinyFreeConfig);
    TempDir d;
    io::write_text_file(d.str() + "/graph.csv", "eta,E1,E2\n");
    cmd_diabatize(cfg, d.str() + "/graph.csv", d.str(), 1);
    const std::string out = io::read_text_file(d.str() + "/crossings.json");
    CHECK(out.find("\"records\": []") != std::string::npos);
}

TEST_CASE("cmd_resonance: missing crossings file fails cleanly") {
    const RunConfig cfg = parse_config(kTinyFreeConfig);
    TempDir d;
    CHECK_THROWS_AS(cmd_resonance(cfg, d.str() + "/nothing.json", d.str(), 1), Error);
    io::write_text_file(d.str() + "/broken.json", "{\"records\": 3}");
    CHECK_THROWS_AS(cmd_resonance(cfg, d.str() + "/broken.json", d.str(), 1), SchemaError);
}

TEST_CASE("under-resolved windows emit refinement requests; refinement resolves them") {
    RunConfig cfg = parse_config(kSmallResonanceConfig);
    TempDir d;
    cmd_stab(cfg, d.str(), 1);  // refine=false: coarse 0.01 grid only
    cmd_diabatize(cfg, d.str() + "/graph.csv", d.str(), 1);
    std::string out = io::read_text_file(d.str() + "/crossings.json");
    CHECK(out.find("\"refinement_requests\": []") == std::string::npos);

    cfg.refine = true;
    cmd_diabatize(cfg, d.str() + "/graph.csv", d.str(), 1);
    out = io::read_text_file(d.str() + "/crossings.json");
    CHECK(out.find(config_hash(cfg)) != std::string::npos);  // metadata fingerprint
    const auto records = read_crossings_json(d.str() + "/crossings.json");
    REQUIRE(records.size() == 1);
    CHECK(std::abs(records[0].E_r - 1.5388) < 2e-3);
    CHECK(records[0].delta > 5e-3);  // small box: wide splitting
    CHECK(records[0].n_window_points >= cfg.min_points);
}

TEST_CASE("build_model orders channels and uses the median resonance energy") {
    std::vector<CrossingRecord> recs(3);
    recs[0].eta_c = 0.3;
    recs[0].E_r = 1.51;
    recs[0].delta = 1e-3;
    recs[0].alpha_c = 2.1;
    recs[1].eta_c = -0.2;
    recs[1].E_r = 1.49;
    recs[1].delta = 2e-3;
    recs[1].alpha_c = 2.3;
    recs[2].eta_c = 0.1;
    recs[2].E_r = 1.50;
    recs[2].delta = 3e-3;
    recs[2].alpha_c = 2.2;
    const DiabaticModel m = build_model(recs);
    CHECK(m.E_r == doctest::Approx(1.50));
    REQUIRE(m.channels.size() == 3);
    // channels keep the record order (already sorted by fit_crossings); the
    // builder must not reorder couplings against their channels
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(m.channels[i].second == recs[i].delta);
}
