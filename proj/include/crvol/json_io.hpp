#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crvol/cross_ratio.hpp"
#include "crvol/heisenberg.hpp"
#include "crvol/triangulation.hpp"
#include "json.hpp"

namespace crv {

// Serialization conventions:
//   complex number          [re, im]
//   boundary point          {"z": [re, im], "t": t} or {"at": "infinity"}
//   cross-ratio structure   {"z12": [..], "z21": [..], "z34": [..], "z43": [..]}
//   points document         {"points": [{"id": "p1", ...point...}, ...]}
//   triangulation document  {"tetrahedra": [{"id", "vertices", "sign",
//                            "invariants"?}, ...],
//                            "positions"?: {label: point, ...},
//                            "pairings"?: [{"a", "b", "face"}, ...]}
// Malformed content throws structural_error; all readers reject extra
// ambiguity (duplicate ids, mixed presence of "invariants") rather than guess.

nlohmann::json complex_to_json(const Complex& z);
Complex complex_from_json(const nlohmann::json& j);

nlohmann::json point_to_json(const HeisenbergPoint& p);
HeisenbergPoint point_from_json(const nlohmann::json& j);

struct LabeledPoint {
    std::string id;
    HeisenbergPoint point;
};
std::vector<LabeledPoint> parse_points_document(const nlohmann::json& doc);
nlohmann::json points_document(const std::vector<LabeledPoint>& points);

nlohmann::json structure_to_json(const CrossRatioStructure& s);
CrossRatioStructure structure_from_json(const nlohmann::json& j);

struct TriangulationDocument {
    Triangulation triangulation;
    // Present when every tetrahedron carries an "invariants" object.
    std::optional<CrossRatioAssignment> assignment;
    // Vertex positions, when the document carries a "positions" map.
    std::map<std::string, HeisenbergPoint> positions;
};
TriangulationDocument parse_triangulation_document(const nlohmann::json& doc);
nlohmann::json triangulation_document(
    const Triangulation& t, const CrossRatioAssignment* assignment = nullptr,
    const std::map<std::string, HeisenbergPoint>* positions = nullptr);

nlohmann::json report_to_json(const ComplianceReport& r);

}  // namespace crv
