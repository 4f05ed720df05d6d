#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pscl/cli.hpp"
#include "pscl/report.hpp"

using namespace pscl;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

RunManifest manifest(const std::string& command, const std::string& model) {
    RunManifest m;
    m.command = command;
    m.model_path = model;
    return m;
}

std::string write_temp(const std::string& name, const std::string& text) {
    fs::path p = fs::temp_directory_path() / name;
    std::ofstream(p) << text;
    return p.string();
}

const char* kPerturbed = R"([model]
field = q
evolution = -6*q^2*q_x - q_xxx
constraint r = -q

[qr]
q = q
r = -q
A = -eta^3/2 - eta*q^2 + q
B = -q_xx - eta*q_x - eta^2*q - 2*q^3
C = q_xx - eta*q_x + eta^2*q + 2*q^3

[solution]
name = mkdv-soliton
amplitude = 1
)";

}  // namespace

TEST_CASE("structure check passes for the bundled models") {
    for (const char* name : {"/mkdv.model", "/sine-gordon.model"}) {
        std::ostringstream out, err;
        RunManifest m = manifest("check", std::string(PSCL_MODEL_DIR) + name);
        CHECK(run_command(m, out, err) == 0);
        json j = json::parse(out.str());
        CHECK(j["version"] == tool_version());
        CHECK(j.contains("model_hash"));
        CHECK(j["seed"] == 12345);
        CHECK(j["passed"] == true);
        CHECK(j["failed"].empty());
        for (auto& [key, res] : j["residuals"].items()) {
            CHECK(res["onshell_zero"] == true);
            CHECK(res["probe_max"].get<double>() == 0.0);
        }
        CHECK(j["f_table_matches"] == true);
    }
}

TEST_CASE("structure check fails loudly for perturbed coefficients") {
    std::string path = write_temp("pscl_perturbed.model", kPerturbed);
    std::ostringstream out, err;
    RunManifest m = manifest("check", path);
    CHECK(run_command(m, out, err) == 1);
    json j = json::parse(out.str());
    CHECK(j["passed"] == false);
    CHECK(!j["failed"].empty());
    // the probe pins the failure numerically, not just symbolically
    bool saw_nonzero = false;
    for (auto& [key, res] : j["residuals"].items())
        if (res["probe_max"].get<double>() > 1e-3) saw_nonzero = true;
    CHECK(saw_nonzero);
}

TEST_CASE("input errors exit with code 2") {
    std::ostringstream out, err;
    RunManifest missing = manifest("check", "/nonexistent/path.model");
    CHECK(run_command(missing, out, err) == 2);
    CHECK(!err.str().empty());

    std::string bad = write_temp("pscl_bad.model", "[model]\nfield = q\nevolution = q +\n");
    RunManifest malformed = manifest("check", bad);
    std::ostringstream out2, err2;
    CHECK(run_command(malformed, out2, err2) == 2);
}

TEST_CASE("law generation report") {
    std::ostringstream out, err;
    RunManifest m = manifest("laws", PSCL_MODEL_DIR "/mkdv.model");
    m.n_laws = 4;
    CHECK(run_command(m, out, err) == 0);
    json j = json::parse(out.str());
    REQUIRE(j["laws"].size() == 4);
    CHECK(j["cancelled_orders"].empty());
    for (auto& law : j["laws"]) {
        CHECK(law["verified"] == true);
        CHECK(law.contains("density"));
        CHECK(law.contains("flux"));
    }
    CHECK(j["laws"][0]["density"] == "-q^2");
    CHECK(j["laws"][1]["trivial"] == true);
}

TEST_CASE("law generation reports cancelled orders") {
    std::ostringstream out, err;
    RunManifest m = manifest("laws", PSCL_MODEL_DIR "/sine-gordon.model");
    m.n_laws = 4;
    CHECK(run_command(m, out, err) == 0);
    json j = json::parse(out.str());
    CHECK(j["cancelled_orders"] == json::array({1}));
    for (auto& law : j["laws"]) CHECK(law["verified"] == true);
}

TEST_CASE("mirror hierarchy is emitted on request") {
    std::ostringstream out, err;
    RunManifest m = manifest("laws", PSCL_MODEL_DIR "/mkdv.model");
    m.n_laws = 3;
    m.mirror = true;
    CHECK(run_command(m, out, err) == 0);
    json j = json::parse(out.str());
    REQUIRE(j.contains("mirror_laws"));
    for (auto& law : j["mirror_laws"]) CHECK(law["verified"] == true);
}

TEST_CASE("drift bench writes CSV plus JSON and respects thresholds") {
    std::ostringstream out, err;
    RunManifest m = manifest("bench", PSCL_MODEL_DIR "/mkdv.model");
    m.n_laws = 5;
    m.out_dir = (fs::temp_directory_path() / "pscl_bench_out").string();
    CHECK(run_command(m, out, err) == 0);
    // stdout carries the CSV of I_n(t) followed by the JSON report
    std::string text = out.str();
    CHECK(text.rfind("t,I_1", 0) == 0);
    json j = json::parse(text.substr(text.find('{')));
    CHECK(j["passed"] == true);
    CHECK(j["grid"]["N"] == 512);
    for (auto& d : j["densities"]) {
        if (d["trivial"] == true)
            CHECK(d["max_abs"].get<double>() < 1e-10);
        else
            CHECK(d["max_drift"].get<double>() < 1e-6);
    }
    CHECK(fs::exists(fs::path(m.out_dir) / "bench.csv"));
    CHECK(fs::exists(fs::path(m.out_dir) / "bench.json"));
}

TEST_CASE("unstable step size exits with the numeric-failure code") {
    std::ostringstream out, err;
    RunManifest m = manifest("bench", PSCL_MODEL_DIR "/mkdv.model");
    m.n_laws = 2;
    m.dt = 0.5;
    CHECK(run_command(m, out, err) == 3);
    CHECK(err.str().find("numeric failure") != std::string::npos);
}

TEST_CASE("flow equivalence suite on one spectral value") {
    std::ostringstream out, err;
    RunManifest m = manifest("riccati", PSCL_MODEL_DIR "/mkdv.model");
    m.etas = {1.0};
    m.out_dir = (fs::temp_directory_path() / "pscl_riccati_out").string();
    CHECK(run_command(m, out, err) == 0);
    std::string csv = out.str();
    CHECK(csv.rfind("check,eta,h,mismatch,order,pass", 0) == 0);
    // every row ends in a pass marker
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    int rows = 0;
    while (std::getline(lines, line))
        if (!line.empty()) {
            ++rows;
            CHECK(line.back() == '1');
        }
    CHECK(rows == 6);
    CHECK(fs::exists(fs::path(m.out_dir) / "riccati.csv"));
}

TEST_CASE("report floats are rounded to twelve significant digits") {
    CHECK(fixed12(1.0) == 1.0);
    CHECK(fixed12(1.0 + 1e-15) == 1.0);  // sub-print-precision noise is dropped
    CHECK(fixed12(1.0 / 3.0) == 0.333333333333);
    CHECK(fixed12(-2.5e-13) == -2.5e-13);
}

TEST_CASE("content hashing is stable") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") != fnv1a_hex("b"));
    CHECK(fnv1a_hex("model").size() == 16);
}
