#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crvol/cross_ratio.hpp"
#include "crvol/heisenberg.hpp"
#include "crvol/types.hpp"

namespace crv {

// One labelled, ordered simplex of the complex. The sign is the orientation
// weight of its volume contribution; it is data, not derived from the vertex
// order.
struct Tetrahedron {
    std::string id;
    std::array<std::string, 4> vertices;
    int sign = 1;
};

// Explicit gluing of two face instances carrying the same vertex triple,
// identified by tetrahedron ids.
struct FacePairing {
    std::string tet_a;
    std::string tet_b;
    std::array<std::string, 3> face;
};

// A face of a specific tetrahedron: its vertex set minus the vertex at the
// given position.
struct FaceInstance {
    int tet = 0;
    int opposite = 0;
    friend bool operator==(const FaceInstance&, const FaceInstance&) = default;
    friend auto operator<=>(const FaceInstance&, const FaceInstance&) = default;
};

// A simplicial complex of labelled tetrahedra with a face matching. When the
// explicit pairing list is empty the matching is derived: a vertex triple
// held by exactly two tetrahedra pairs them, a triple held once is boundary,
// and a triple held more than twice is rejected (explicit pairings resolve
// such complexes). A non-empty explicit list replaces derivation entirely;
// unlisted faces are boundary.
class Triangulation {
public:
    explicit Triangulation(std::vector<Tetrahedron> tets,
                           const std::vector<FacePairing>& explicit_pairings = {});

    const std::vector<Tetrahedron>& tetrahedra() const { return tets_; }
    int tet_index(const std::string& id) const;

    // Sorted labels of a face instance.
    std::array<std::string, 3> face_labels(const FaceInstance& f) const;

    // Matched face pairs in deterministic order, each pair ordered.
    const std::vector<std::pair<FaceInstance, FaceInstance>>& pairings() const {
        return pairs_;
    }
    const std::vector<FaceInstance>& boundary_faces() const { return boundary_; }

    std::optional<FaceInstance> partner(const FaceInstance& f) const;

    // The pairing list in id/label form (usable to rebuild the complex).
    std::vector<FacePairing> pairing_records() const;

private:
    std::vector<Tetrahedron> tets_;
    std::vector<std::pair<FaceInstance, FaceInstance>> pairs_;
    std::vector<FaceInstance> boundary_;
    std::map<FaceInstance, FaceInstance> partner_;
    std::map<std::string, int> index_;
};

// One cross-ratio structure per tetrahedron, parallel to
// Triangulation::tetrahedra().
using CrossRatioAssignment = std::vector<CrossRatioStructure>;

struct ResidualRecord {
    std::string id;
    double residual = 0.0;
};

// Outcome of a compatibility validation: residuals for the interior items in
// deterministic order, skipped boundary items by name, and the worst
// offender. pass holds exactly when every residual is at or below tolerance.
struct ComplianceReport {
    double tolerance = 1e-9;
    std::vector<ResidualRecord> residuals;
    std::vector<std::string> boundary;
    std::string worst_id;
    double worst_residual = 0.0;
    bool pass = true;
};

// Checks, around every interior edge, that the invariants X(a,b,m_k,m_{k+1})
// read along the star cycle multiply to 1 (both edge orientations; the
// residual is the worse of the two). Boundary edges are skipped and listed.
// A star that is neither a single cycle nor a single boundary path raises a
// structural error naming the edge.
ComplianceReport validate_edge_compatibility(const Triangulation& t,
                                             const CrossRatioAssignment& a,
                                             double tol = 1e-9);

// Checks, for every paired face, that the triple products of vertex
// invariants seen from the two opposite vertices agree; when the two vertex
// orders induce opposite orientations on the face, additionally checks that
// the product of the six invariants along the edges into the opposite
// vertices equals 1.
ComplianceReport validate_face_compatibility(const Triangulation& t,
                                             const CrossRatioAssignment& a,
                                             double tol = 1e-9);

// Signed volume sum over the tetrahedra in index order, reduced pairwise for
// run-to-run bit stability.
double total_volume(const Triangulation& t, const CrossRatioAssignment& a);

struct PachnerResult {
    Triangulation triangulation;
    CrossRatioAssignment assignment;
};

// Replaces the two tetrahedra glued along the named interior face (three
// vertex labels) by three tetrahedra around the new edge joining the two
// opposite vertices. The new invariants are induced through the five-point
// coordinates; the move is refused (degeneracy error) when those coordinates
// are degenerate, and rejected (structural error) when the face is not an
// interior face of two tetrahedra over five vertices with opposite effective
// orientations.
PachnerResult pachner_23(const Triangulation& t, const CrossRatioAssignment& a,
                         const std::array<std::string, 3>& face);

// Inverse move: collapses the three tetrahedra around the interior edge
// (l, lp) back to two. The edge is ordered: l becomes the fourth vertex of
// the first replacement tetrahedron, lp of the second.
PachnerResult pachner_32(const Triangulation& t, const CrossRatioAssignment& a,
                         const std::string& l, const std::string& lp);

// Per-tetrahedron structures measured from vertex positions on the boundary
// sphere; degeneracies are reported with the tetrahedron id.
CrossRatioAssignment geometric_assignment(
    const Triangulation& t,
    const std::map<std::string, HeisenbergPoint>& positions);

}  // namespace crv
