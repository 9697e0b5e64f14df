#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "crvol/cross_ratio.hpp"
#include "crvol/heisenberg.hpp"
#include "crvol/json_io.hpp"
#include "crvol/sampling.hpp"
#include "crvol/triangulation.hpp"
#include "doctest.h"
#include "support/random.hpp"

namespace {

using namespace crv;
using nlohmann::json;

// Serialize, re-parse the textual form, and hand back the reconstructed tree:
// the full stability loop a file on disk goes through.
json through_text(const json& j) { return json::parse(j.dump()); }

}  // namespace

TEST_CASE("complex values round-trip bitwise through text") {
    testsupport::Rng rng(90210);
    for (int rep = 0; rep < 200; ++rep) {
        const Complex z(rng.uniform(-1e6, 1e6) * std::pow(10.0, rng.uniform(-12.0, 0.0)),
                        rng.uniform(-1e6, 1e6) * std::pow(10.0, rng.uniform(-12.0, 0.0)));
        const Complex back = complex_from_json(through_text(complex_to_json(z)));
        CHECK(back.real() == z.real());
        CHECK(back.imag() == z.imag());
    }
    CHECK(complex_from_json(json::parse("[2, -3.5]")) == Complex(2.0, -3.5));
    CHECK_THROWS_AS(complex_from_json(json::parse("[1]")), structural_error);
    CHECK_THROWS_AS(complex_from_json(json::parse("[1, \"i\"]")),
                    structural_error);
    CHECK_THROWS_AS(complex_from_json(json::parse("{\"re\": 1}")),
                    structural_error);
}

TEST_CASE("points serialize and parse, including the point at infinity") {
    const HeisenbergPoint finite(Complex(0.25, -1.5), 2.75);
    const HeisenbergPoint back =
        point_from_json(through_text(point_to_json(finite)));
    CHECK(!back.is_infinity());
    CHECK(back.z() == finite.z());
    CHECK(back.t() == finite.t());

    const HeisenbergPoint inf =
        point_from_json(through_text(point_to_json(HeisenbergPoint::infinity())));
    CHECK(inf.is_infinity());

    CHECK_THROWS_AS(point_from_json(json::parse("{\"z\": [1, 2]}")),
                    structural_error);
    CHECK_THROWS_AS(point_from_json(json::parse("{\"t\": 0.5}")),
                    structural_error);
    CHECK_THROWS_AS(point_from_json(json::parse("{\"at\": \"elsewhere\"}")),
                    structural_error);
    CHECK_THROWS_AS(
        point_from_json(json::parse("{\"at\": \"infinity\", \"t\": 1}")),
        structural_error);
    CHECK_THROWS_AS(point_from_json(json::parse("[0, 0, 1]")),
                    structural_error);
}

TEST_CASE("points documents keep order and reject duplicate ids") {
    const std::vector<LabeledPoint> pts = {
        {"p1", HeisenbergPoint::infinity()},
        {"p2", HeisenbergPoint(Complex(0.0, 0.0), 0.0)},
        {"p3", HeisenbergPoint(Complex(1.0, 0.0), 0.3)},
        {"p4", HeisenbergPoint(Complex(0.8, -0.4), -0.7)}};
    const auto back = parse_points_document(through_text(points_document(pts)));
    REQUIRE(back.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(back[i].id == pts[i].id);
        CHECK(back[i].point.is_infinity() == pts[i].point.is_infinity());
        if (!back[i].point.is_infinity()) {
            CHECK(back[i].point.z() == pts[i].point.z());
            CHECK(back[i].point.t() == pts[i].point.t());
        }
    }

    CHECK_THROWS_AS(parse_points_document(json::parse("{\"points\": []}")),
                    structural_error);
    CHECK_THROWS_AS(parse_points_document(json::parse("{}")),
                    structural_error);
    CHECK_THROWS_AS(
        parse_points_document(json::parse(
            "{\"points\": [{\"id\": \"p\", \"z\": [0,0], \"t\": 0},"
            "{\"id\": \"p\", \"z\": [1,0], \"t\": 0}]}")),
        structural_error);
    CHECK_THROWS_AS(
        parse_points_document(
            json::parse("{\"points\": [{\"z\": [0,0], \"t\": 0}]}")),
        structural_error);
}

TEST_CASE("cross-ratio structures round-trip with all twelve invariants") {
    testsupport::Rng rng(5150);
    for (int rep = 0; rep < 50; ++rep) {
        const CrossRatioStructure s =
            from_free_params(rng.generic(), rng.generic(), rng.generic(),
                             rng.generic());
        const CrossRatioStructure back =
            structure_from_json(through_text(structure_to_json(s)));
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j) {
                if (i == j) continue;
                CHECK(back.invariant(i, j) == s.invariant(i, j));
            }
    }
    CHECK_THROWS_AS(structure_from_json(json::parse(
                        "{\"z12\": [2,0], \"z21\": [3,0], \"z34\": [4,0]}")),
                    structural_error);
    // Values on the forbidden set {0, 1} are rejected by construction.
    CHECK_THROWS_AS(
        structure_from_json(json::parse("{\"z12\": [1,0], \"z21\": [3,0],"
                                        "\"z34\": [4,0], \"z43\": [5,0]}")),
        std::domain_error);
}

TEST_CASE("triangulation documents round-trip structure and metadata") {
    testsupport::Rng rng(181818);
    const auto p = random_generic_quadruple(rng.engine());
    const std::map<std::string, HeisenbergPoint> pos = {
        {"a", p[0]}, {"b", p[1]}, {"c", p[2]}, {"d", p[3]}};
    const Triangulation tri({{"T1", {"a", "b", "c", "d"}, 1},
                             {"T2", {"a", "b", "d", "c"}, 1}});
    const CrossRatioAssignment assign = geometric_assignment(tri, pos);

    const json doc =
        through_text(triangulation_document(tri, &assign, &pos));
    const TriangulationDocument back = parse_triangulation_document(doc);

    const auto& tets = back.triangulation.tetrahedra();
    REQUIRE(tets.size() == 2);
    CHECK(tets[0].id == "T1");
    CHECK(tets[1].id == "T2");
    CHECK(tets[1].vertices == std::array<std::string, 4>{"a", "b", "d", "c"});
    CHECK(tets[0].sign == 1);
    CHECK(back.triangulation.pairings() == tri.pairings());

    REQUIRE(back.assignment.has_value());
    REQUIRE(back.assignment->size() == 2);
    for (std::size_t k = 0; k < 2; ++k)
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j) {
                if (i == j) continue;
                CHECK((*back.assignment)[k].invariant(i, j) ==
                      assign[k].invariant(i, j));
            }

    REQUIRE(back.positions.size() == 4);
    for (const auto& [label, point] : pos) {
        const auto& q = back.positions.at(label);
        CHECK(q.is_infinity() == point.is_infinity());
        if (!q.is_infinity()) {
            CHECK(q.z() == point.z());
            CHECK(q.t() == point.t());
        }
    }

    // Without optional blocks the assignment comes back empty.
    const TriangulationDocument bare =
        parse_triangulation_document(through_text(triangulation_document(tri)));
    CHECK(!bare.assignment.has_value());
    CHECK(bare.positions.empty());
    CHECK(bare.triangulation.pairings() == tri.pairings());
}

TEST_CASE("triangulation documents reject malformed content") {
    CHECK_THROWS_AS(parse_triangulation_document(json::parse("{}")),
                    structural_error);
    CHECK_THROWS_AS(
        parse_triangulation_document(json::parse("{\"tetrahedra\": []}")),
        structural_error);
    CHECK_THROWS_AS(parse_triangulation_document(json::parse(
                        "{\"tetrahedra\": [{\"id\": \"T\","
                        "\"vertices\": [\"a\", \"b\", \"c\"]}]}")),
                    structural_error);
    // Mixed presence of invariants is ambiguous.
    CHECK_THROWS_AS(
        parse_triangulation_document(json::parse(
            "{\"tetrahedra\": ["
            "{\"id\": \"T1\", \"vertices\": [\"a\",\"b\",\"c\",\"d\"],"
            " \"invariants\": {\"z12\": [2,1], \"z21\": [0.3,-0.8],"
            "                  \"z34\": [-1,2], \"z43\": [1.5,0.5]}},"
            "{\"id\": \"T2\", \"vertices\": [\"a\",\"b\",\"d\",\"c\"]}]}")),
        structural_error);
    // Pairing blocks must be complete.
    CHECK_THROWS_AS(
        parse_triangulation_document(json::parse(
            "{\"tetrahedra\": ["
            "{\"id\": \"T1\", \"vertices\": [\"a\",\"b\",\"c\",\"d\"]},"
            "{\"id\": \"T2\", \"vertices\": [\"a\",\"b\",\"d\",\"c\"]}],"
            "\"pairings\": [{\"a\": \"T1\", \"b\": \"T2\"}]}")),
        structural_error);
    // Structural defects surface through the triangulation constructor.
    CHECK_THROWS_AS(
        parse_triangulation_document(json::parse(
            "{\"tetrahedra\": ["
            "{\"id\": \"T\", \"vertices\": [\"a\",\"a\",\"c\",\"d\"]}]}")),
        structural_error);
}

TEST_CASE("compliance reports serialize with residuals and worst entry") {
    ComplianceReport r;
    r.tolerance = 1e-9;
    r.residuals = {{"a-b", 1e-12}, {"c-d", 3e-8}};
    r.boundary = {"a-c"};
    r.worst_id = "c-d";
    r.worst_residual = 3e-8;
    r.pass = false;

    const json j = through_text(report_to_json(r));
    CHECK(j["pass"] == false);
    CHECK(j["tolerance"] == 1e-9);
    REQUIRE(j["residuals"].size() == 2);
    CHECK(j["residuals"][1]["id"] == "c-d");
    CHECK(j["residuals"][1]["value"] == 3e-8);
    CHECK(j["boundary"] == json::array({"a-c"}));
    CHECK(j["worst"]["id"] == "c-d");

    const ComplianceReport empty;
    const json je = report_to_json(empty);
    CHECK(je["pass"] == true);
    CHECK(je["worst"].is_null());
}
