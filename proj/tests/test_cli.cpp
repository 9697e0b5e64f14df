#include <sys/wait.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>

#include "crvol/cross_ratio.hpp"
#include "crvol/heisenberg.hpp"
#include "crvol/json_io.hpp"
#include "crvol/triangulation.hpp"
#include "crvol/types.hpp"
#include "doctest.h"
#include "json.hpp"

#ifndef CRVOL_CLI_PATH
#error "CRVOL_CLI_PATH must point at the command-line binary"
#endif

namespace {

using namespace crv;
using nlohmann::json;

struct RunResult {
    int exit_code;
    std::string out;
    json payload;  // parsed from stdout when non-empty
};

RunResult run_cli(const std::string& args) {
    const std::string cmd =
        std::string(CRVOL_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe))
        out.append(buf, n);
    const int status = pclose(pipe);
    RunResult r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, json()};
    if (!out.empty()) r.payload = json::parse(out);
    return r;
}

std::filesystem::path fixture_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "crvol_cli_fixtures";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string write_fixture(const std::string& name, const std::string& text) {
    const auto path = fixture_dir() / name;
    std::ofstream(path) << text;
    return path.string();
}

std::string write_fixture_json(const std::string& name, const json& doc) {
    return write_fixture(name, doc.dump());
}

const char* kPoints4 = R"({"points": [
  {"id": "p1", "at": "infinity"},
  {"id": "p2", "z": [0, 0], "t": 0},
  {"id": "p3", "z": [1, 0], "t": 0.3},
  {"id": "p4", "z": [0.8, -0.4], "t": -0.7}
]})";

const char* kPoints5 = R"({"points": [
  {"id": "p1", "at": "infinity"},
  {"id": "p2", "z": [0, 0], "t": 0},
  {"id": "p3", "z": [1, 0], "t": 0.3},
  {"id": "p4", "z": [0.8, -0.4], "t": -0.7},
  {"id": "p5", "z": [-0.3, 0.9], "t": 0.4}
]})";

const char* kPointsChain = R"({"points": [
  {"id": "p1", "z": [0, 0], "t": 0},
  {"id": "p2", "z": [0, 0], "t": 1},
  {"id": "p3", "z": [0, 0], "t": 2},
  {"id": "p4", "z": [1, 1], "t": 0.5}
]})";

const std::map<std::string, HeisenbergPoint>& five_positions() {
    static const std::map<std::string, HeisenbergPoint> pos = {
        {"1", HeisenbergPoint::infinity()},
        {"2", HeisenbergPoint(Complex(0.0, 0.0), 0.0)},
        {"3", HeisenbergPoint(Complex(1.0, 0.0), 0.3)},
        {"4", HeisenbergPoint(Complex(0.8, -0.4), -0.7)},
        {"5", HeisenbergPoint(Complex(-0.3, 0.9), 0.4)}};
    return pos;
}

}  // namespace

TEST_CASE("cli dilog evaluates values and the angle form") {
    const RunResult at_i = run_cli("dilog 0 1");
    CHECK(at_i.exit_code == 0);
    CHECK(at_i.payload["status"] == "ok");
    CHECK(std::abs(at_i.payload["value"].get<double>() -
                   0.9159655941772190) <= 1e-12);
    CHECK(at_i.payload["estimated_error"].get<double>() <= 1e-12);

    const RunResult real_axis = run_cli("dilog 0.5 0");
    CHECK(real_axis.exit_code == 0);
    CHECK(real_axis.payload["value"].get<double>() == 0.0);

    const RunResult angle = run_cli("dilog --lobachevsky 0.5235987755982988");
    CHECK(angle.exit_code == 0);
    CHECK(std::abs(angle.payload["value"].get<double>() -
                   0.5074708032048268) <= 1e-12);

    CHECK(run_cli("dilog").exit_code == 2);
}

TEST_CASE("cli simplex reports volume, branch, and angles") {
    // Two unit-modulus parameters whose product is e^{i pi/3}.
    const std::string pair =
        "--z12 0.8660254037844387 0.49999999999999994 "
        "--z21 0.8660254037844387 0.49999999999999994";
    const RunResult vol = run_cli("simplex " + pair + " --volume");
    CHECK(vol.exit_code == 0);
    CHECK(std::abs(vol.payload["volume"].get<double>() -
                   1.0149416064096536) <= 1e-9);
    CHECK(vol.payload["invariants"].size() == 12);

    const RunResult branch = run_cli(
        "simplex --z12 2 0 --z21 3 0 --z34 -4 0 --z43 -1.5 0 --classify");
    CHECK(branch.exit_code == 0);
    CHECK(branch.payload["branch"] == "HyperbolicBranch");

    const RunResult angles = run_cli(
        "simplex --z12 2 1 --z21 0.3 -0.8 --z34 -1 2 --z43 1.5 0.5 --angles");
    CHECK(angles.exit_code == 0);
    CHECK(angles.payload["theta"].size() == 4);
    CHECK(angles.payload["r"].size() == 4);
    CHECK(angles.payload["angle_residuals"]["vertex_sum"].get<double>() <=
          1e-12);

    // A parameter on the forbidden set is an input error.
    const RunResult bad =
        run_cli("simplex --z12 1 0 --z21 2 0 --z34 3 0 --z43 4 0 --volume");
    CHECK(bad.exit_code == 2);
    CHECK(bad.payload["status"] == "error");
}

TEST_CASE("cli simplex sampling is deterministic for a fixed seed") {
    const RunResult a = run_cli("simplex --random 3 --seed 17");
    const RunResult b = run_cli("simplex --random 3 --seed 17");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    REQUIRE(a.payload["samples"].size() == 3);
    for (const auto& s : a.payload["samples"]) {
        CHECK(s.contains("volume"));
        CHECK(s.contains("z12"));
    }
    const RunResult c = run_cli("simplex --random 3 --seed 18");
    CHECK(c.out != a.out);
}

TEST_CASE("cli config runs checks on point files") {
    const std::string four = write_fixture("pts4.json", kPoints4);
    const RunResult checks =
        run_cli("config " + four + " --check-cr --check-coboundary");
    CHECK(checks.exit_code == 0);
    CHECK(checks.payload["status"] == "ok");
    REQUIRE(checks.payload["checks"].size() == 2);
    for (const auto& c : checks.payload["checks"]) {
        CHECK(c["pass"] == true);
        CHECK(c["residual"].get<double>() <= 1e-9);
    }

    const RunResult inv = run_cli("config " + four + " --invariants --volume");
    CHECK(inv.exit_code == 0);
    CHECK(inv.payload["invariants"].size() == 12);
    CHECK(std::abs(inv.payload["volume"].get<double>()) > 1e-3);

    const RunResult cart = run_cli("config " + four + " --cartan");
    CHECK(cart.exit_code == 0);
    REQUIRE(cart.payload["cartan"].size() == 4);
    for (const auto& entry : cart.payload["cartan"])
        CHECK(std::abs(entry["angle"].get<double>()) <= kPi / 2 + 1e-9);

    const std::string five = write_fixture("pts5.json", kPoints5);
    const RunResult ft = run_cli("config " + five + " --five-term");
    CHECK(ft.exit_code == 0);
    CHECK(ft.payload["checks"][0]["residual"].get<double>() <= 1e-9);
    CHECK(ft.payload["volumes"].size() == 5);

    // Mismatched point counts are usage errors.
    CHECK(run_cli("config " + five + " --volume").exit_code == 2);
    CHECK(run_cli("config " + four + " --five-term").exit_code == 2);
    CHECK(run_cli("config " + four).exit_code == 2);

    // Degenerate configurations are refused.
    const std::string chain = write_fixture("ptsC.json", kPointsChain);
    const RunResult refused = run_cli("config " + chain + " --check-cr");
    CHECK(refused.exit_code == 3);
    CHECK(refused.payload["status"] == "refused");
}

TEST_CASE("cli tri validate and volume work from positions") {
    const std::string file = write_fixture("tri_double.json", R"({
      "tetrahedra": [
        {"id": "T1", "vertices": ["a", "b", "c", "d"], "sign": 1},
        {"id": "T2", "vertices": ["a", "b", "d", "c"], "sign": 1}
      ],
      "positions": {
        "a": {"at": "infinity"},
        "b": {"z": [0, 0], "t": 0},
        "c": {"z": [1, 0], "t": 0.3},
        "d": {"z": [0.8, -0.4], "t": -0.7}
      }})");
    const RunResult v = run_cli("tri validate " + file);
    CHECK(v.exit_code == 0);
    CHECK(v.payload["status"] == "ok");
    CHECK(v.payload["edges"]["pass"] == true);
    CHECK(v.payload["faces"]["pass"] == true);
    CHECK(v.payload["edges"]["residuals"].size() == 6);
    CHECK(std::abs(v.payload["volume"].get<double>()) <= 1e-12);

    const RunResult vol = run_cli("tri volume " + file);
    CHECK(vol.exit_code == 0);
    CHECK(std::abs(vol.payload["volume"].get<double>()) <= 1e-12);
}

TEST_CASE("cli tri volume matches the single-simplex anchor") {
    const Complex root = std::polar(1.0, kPi / 6.0);
    const CrossRatioStructure s = hyperbolic_lift(root, root);
    const Triangulation tri({{"T", {"a", "b", "c", "d"}, 1}});
    const CrossRatioAssignment assign = {s};
    const std::string file = write_fixture_json(
        "tri_single.json", triangulation_document(tri, &assign));
    const RunResult vol = run_cli("tri volume " + file);
    CHECK(vol.exit_code == 0);
    CHECK(std::abs(vol.payload["volume"].get<double>() -
                   1.0149416064096536) <= 1e-11);
}

TEST_CASE("cli tri validate flags a perturbed assignment") {
    const Triangulation tri({{"T1", {"1", "2", "3", "4"}, 1},
                             {"T2", {"1", "2", "3", "5"}, -1}});
    CrossRatioAssignment assign = geometric_assignment(tri, five_positions());
    // Also build the honest file, then perturb one parameter.
    const auto f = assign[0].free_params();
    assign[0] = from_free_params(f[0] + Complex(1e-3, 0.0), f[1], f[2], f[3]);
    const std::string file = write_fixture_json(
        "tri_perturbed.json", triangulation_document(tri, &assign));
    const RunResult v = run_cli("tri validate " + file);
    CHECK(v.exit_code == 1);
    CHECK(v.payload["status"] == "failed");
    CHECK(v.payload["faces"]["pass"] == false);
}

TEST_CASE("cli tri pachner23 preserves volume and emits a valid complex") {
    const std::string file = write_fixture("tri_pair.json", R"({
      "tetrahedra": [
        {"id": "T1", "vertices": ["1", "2", "3", "4"], "sign": 1},
        {"id": "T2", "vertices": ["1", "2", "3", "5"], "sign": -1}
      ],
      "positions": {
        "1": {"at": "infinity"},
        "2": {"z": [0, 0], "t": 0},
        "3": {"z": [1, 0], "t": 0.3},
        "4": {"z": [0.8, -0.4], "t": -0.7},
        "5": {"z": [-0.3, 0.9], "t": 0.4}
      }})");
    const RunResult moved = run_cli("tri pachner23 " + file + " --face 1,2,3");
    CHECK(moved.exit_code == 0);
    const double before = moved.payload["volume_before"].get<double>();
    const double after = moved.payload["volume_after"].get<double>();
    CHECK(std::abs(before - after) <= 1e-9);
    REQUIRE(moved.payload["triangulation"]["tetrahedra"].size() == 3);

    // The emitted document is itself a valid input.
    const std::string out_file =
        write_fixture_json("tri_moved.json", moved.payload["triangulation"]);
    const RunResult v = run_cli("tri validate " + out_file);
    CHECK(v.exit_code == 0);
    const RunResult vol = run_cli("tri volume " + out_file);
    CHECK(std::abs(vol.payload["volume"].get<double>() - after) <= 1e-12);

    // Moving across a boundary face is a structural error.
    CHECK(run_cli("tri pachner23 " + file + " --face 1,2,4").exit_code == 2);
}

TEST_CASE("cli tri pachner23 refuses degenerate coordinate strata") {
    const Triangulation tri({{"T1", {"1", "2", "3", "4"}, 1},
                             {"T2", {"1", "2", "3", "5"}, -1}});
    const CrossRatioAssignment assign = {
        from_free_params(Complex(2, 1), Complex(0.3, -0.8), Complex(-1, 2),
                         Complex(1.5, 0.5)),
        from_free_params(Complex(2, 1), Complex(0.7, 0.2), Complex(2.2, -1),
                         Complex(-0.4, 0.9))};
    const std::string file = write_fixture_json(
        "tri_degenerate.json", triangulation_document(tri, &assign));
    const RunResult r = run_cli("tri pachner23 " + file + " --face 1,2,3");
    CHECK(r.exit_code == 3);
    CHECK(r.payload["status"] == "refused");
}

TEST_CASE("cli reports malformed input as exit 2 with a json payload") {
    const std::string broken = write_fixture("broken.json", "{\"tetrahedra\": [");
    const RunResult parse = run_cli("tri validate " + broken);
    CHECK(parse.exit_code == 2);
    CHECK(parse.payload["status"] == "error");

    CHECK(run_cli("tri validate /definitely/not/here.json").exit_code == 2);
    CHECK(run_cli("bogus").exit_code == 2);
    CHECK(run_cli("tri").exit_code == 2);

    // Documents without invariants or positions cannot be analysed.
    const std::string empty_doc = write_fixture("tri_bare.json", R"({
      "tetrahedra": [
        {"id": "T", "vertices": ["a", "b", "c", "d"], "sign": 1}
      ]})");
    const RunResult bare = run_cli("tri volume " + empty_doc);
    CHECK(bare.exit_code == 2);
    CHECK(bare.payload["status"] == "error");
}
