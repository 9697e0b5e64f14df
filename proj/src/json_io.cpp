#include "crvol/json_io.hpp"

#include <set>
#include <utility>

namespace crv {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
    throw structural_error("json: " + what);
}

const json& member(const json& j, const char* key, const char* where) {
    if (!j.is_object())
        fail(std::string(where) + " must be an object");
    const auto it = j.find(key);
    if (it == j.end())
        fail(std::string(where) + " is missing \"" + key + "\"");
    return *it;
}

std::string string_member(const json& j, const char* key, const char* where) {
    const json& v = member(j, key, where);
    if (!v.is_string() || v.get<std::string>().empty())
        fail(std::string(where) + " needs a non-empty string \"" + key + "\"");
    return v.get<std::string>();
}

}  // namespace

json complex_to_json(const Complex& z) {
    return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
        !j[1].is_number())
        fail("a complex value must be a two-number array [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

json point_to_json(const HeisenbergPoint& p) {
    if (p.is_infinity()) return json{{"at", "infinity"}};
    return json{{"z", complex_to_json(p.z())}, {"t", p.t()}};
}

HeisenbergPoint point_from_json(const json& j) {
    if (!j.is_object()) fail("a point must be an object");
    if (j.contains("at")) {
        if (!j["at"].is_string() || j["at"].get<std::string>() != "infinity")
            fail("the only symbolic point is {\"at\": \"infinity\"}");
        if (j.contains("z") || j.contains("t"))
            fail("the point at infinity carries no \"z\" or \"t\"");
        return HeisenbergPoint::infinity();
    }
    const json& t = member(j, "t", "a finite point");
    if (!t.is_number()) fail("point field \"t\" must be a number");
    return HeisenbergPoint(complex_from_json(member(j, "z", "a finite point")),
                           t.get<double>());
}

std::vector<LabeledPoint> parse_points_document(const json& doc) {
    const json& arr = member(doc, "points", "a points document");
    if (!arr.is_array() || arr.empty())
        fail("\"points\" must be a non-empty array");
    std::vector<LabeledPoint> out;
    std::set<std::string> ids;
    for (const json& e : arr) {
        LabeledPoint lp{string_member(e, "id", "a point entry"),
                        point_from_json(e)};
        if (!ids.insert(lp.id).second)
            fail("duplicate point id '" + lp.id + "'");
        out.push_back(std::move(lp));
    }
    return out;
}

json points_document(const std::vector<LabeledPoint>& points) {
    json arr = json::array();
    for (const auto& lp : points) {
        json e = point_to_json(lp.point);
        e["id"] = lp.id;
        arr.push_back(std::move(e));
    }
    return json{{"points", std::move(arr)}};
}

json structure_to_json(const CrossRatioStructure& s) {
    const auto f = s.free_params();
    return json{{"z12", complex_to_json(f[0])},
                {"z21", complex_to_json(f[1])},
                {"z34", complex_to_json(f[2])},
                {"z43", complex_to_json(f[3])}};
}

CrossRatioStructure structure_from_json(const json& j) {
    return from_free_params(
        complex_from_json(member(j, "z12", "an invariants object")),
        complex_from_json(member(j, "z21", "an invariants object")),
        complex_from_json(member(j, "z34", "an invariants object")),
        complex_from_json(member(j, "z43", "an invariants object")));
}

TriangulationDocument parse_triangulation_document(const json& doc) {
    const json& arr = member(doc, "tetrahedra", "a triangulation document");
    if (!arr.is_array() || arr.empty())
        fail("\"tetrahedra\" must be a non-empty array");

    std::vector<Tetrahedron> tets;
    std::vector<CrossRatioStructure> structures;
    std::size_t with_invariants = 0;
    for (const json& e : arr) {
        Tetrahedron t;
        t.id = string_member(e, "id", "a tetrahedron entry");
        const json& vs = member(e, "vertices", "a tetrahedron entry");
        if (!vs.is_array() || vs.size() != 4)
            fail("tetrahedron '" + t.id +
                 "' needs exactly four vertex labels");
        for (int k = 0; k < 4; ++k) {
            if (!vs[std::size_t(k)].is_string())
                fail("tetrahedron '" + t.id + "' has a non-string vertex");
            t.vertices[std::size_t(k)] = vs[std::size_t(k)].get<std::string>();
        }
        if (e.contains("sign")) {
            if (!e["sign"].is_number_integer())
                fail("tetrahedron '" + t.id + "' sign must be an integer");
            t.sign = e["sign"].get<int>();
        }
        if (e.contains("invariants")) {
            structures.push_back(structure_from_json(e["invariants"]));
            ++with_invariants;
        }
        tets.push_back(std::move(t));
    }
    if (with_invariants != 0 && with_invariants != tets.size())
        fail("either every tetrahedron carries \"invariants\" or none does");

    std::vector<FacePairing> pairings;
    if (doc.contains("pairings")) {
        const json& ps = doc["pairings"];
        if (!ps.is_array()) fail("\"pairings\" must be an array");
        for (const json& e : ps) {
            FacePairing p;
            p.tet_a = string_member(e, "a", "a pairing entry");
            p.tet_b = string_member(e, "b", "a pairing entry");
            const json& face = member(e, "face", "a pairing entry");
            if (!face.is_array() || face.size() != 3)
                fail("pairing \"face\" must list three vertex labels");
            for (int k = 0; k < 3; ++k) {
                if (!face[std::size_t(k)].is_string())
                    fail("pairing \"face\" has a non-string label");
                p.face[std::size_t(k)] = face[std::size_t(k)].get<std::string>();
            }
            pairings.push_back(std::move(p));
        }
    }

    std::map<std::string, HeisenbergPoint> positions;
    if (doc.contains("positions")) {
        const json& ps = doc["positions"];
        if (!ps.is_object()) fail("\"positions\" must map labels to points");
        for (const auto& [label, value] : ps.items())
            positions.emplace(label, point_from_json(value));
    }

    TriangulationDocument out{Triangulation(std::move(tets), pairings),
                              std::nullopt, std::move(positions)};
    if (with_invariants != 0) out.assignment = std::move(structures);
    return out;
}

json triangulation_document(
    const Triangulation& t, const CrossRatioAssignment* assignment,
    const std::map<std::string, HeisenbergPoint>* positions) {
    const auto& tets = t.tetrahedra();
    if (assignment && assignment->size() != tets.size())
        throw structural_error(
            "assignment size does not match the tetrahedron count");
    json arr = json::array();
    for (std::size_t i = 0; i < tets.size(); ++i) {
        json e{{"id", tets[i].id},
               {"vertices", tets[i].vertices},
               {"sign", tets[i].sign}};
        if (assignment) e["invariants"] = structure_to_json((*assignment)[i]);
        arr.push_back(std::move(e));
    }
    json doc{{"tetrahedra", std::move(arr)}};

    const auto records = t.pairing_records();
    if (!records.empty()) {
        json ps = json::array();
        for (const auto& r : records)
            ps.push_back(json{{"a", r.tet_a}, {"b", r.tet_b}, {"face", r.face}});
        doc["pairings"] = std::move(ps);
    }
    if (positions && !positions->empty()) {
        json ps = json::object();
        for (const auto& [label, point] : *positions)
            ps[label] = point_to_json(point);
        doc["positions"] = std::move(ps);
    }
    return doc;
}

json report_to_json(const ComplianceReport& r) {
    json residuals = json::array();
    for (const auto& e : r.residuals)
        residuals.push_back(json{{"id", e.id}, {"value", e.residual}});
    json doc{{"pass", r.pass},
             {"tolerance", r.tolerance},
             {"residuals", std::move(residuals)},
             {"boundary", r.boundary}};
    if (r.residuals.empty())
        doc["worst"] = nullptr;
    else
        doc["worst"] = json{{"id", r.worst_id}, {"value", r.worst_residual}};
    return doc;
}

}  // namespace crv
