#include "crvol/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "crvol/pentad.hpp"

namespace crv {

namespace {

std::string join_labels(const std::array<std::string, 3>& f) {
    return f[0] + "-" + f[1] + "-" + f[2];
}

std::array<std::string, 3> sorted_triple(std::array<std::string, 3> f) {
    std::sort(f.begin(), f.end());
    return f;
}

// 1-based position of a label among a tetrahedron's vertices.
int role_of(const Tetrahedron& t, const std::string& label) {
    for (int k = 0; k < 4; ++k)
        if (t.vertices[std::size_t(k)] == label) return k + 1;
    throw structural_error("vertex '" + label + "' is not in tetrahedron '" +
                           t.id + "'");
}

Complex quad_invariant(const Tetrahedron& t, const CrossRatioStructure& s,
                       const std::string& a, const std::string& b,
                       const std::string& c, const std::string& d) {
    return s.invariant(SimplexOrdering(role_of(t, a), role_of(t, b),
                                       role_of(t, c), role_of(t, d)));
}

// Sign of the orientation a vertex order induces on the face omitting the
// vertex at 0-based position `opposite`: the parity of the remaining order
// against the sorted one, flipped once per position skipped.
int induced_face_orientation(const Tetrahedron& t, int opposite) {
    std::array<std::string, 3> rest;
    int n = 0;
    for (int k = 0; k < 4; ++k)
        if (k != opposite) rest[std::size_t(n++)] = t.vertices[std::size_t(k)];
    int parity = 1;
    // Parity of the 3-element arrangement by inversion count.
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (rest[std::size_t(i)] > rest[std::size_t(j)]) parity = -parity;
    return (opposite % 2 == 0 ? 1 : -1) * parity;
}

void finalize(ComplianceReport& r) {
    r.pass = true;
    r.worst_residual = 0.0;
    r.worst_id.clear();
    for (const auto& e : r.residuals) {
        if (e.residual > r.worst_residual) {
            r.worst_residual = e.residual;
            r.worst_id = e.id;
        }
        if (e.residual > r.tolerance) r.pass = false;
    }
}

double pairwise_sum(const std::vector<double>& v, std::size_t lo,
                    std::size_t hi) {
    if (hi == lo) return 0.0;
    if (hi - lo == 1) return v[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

// One tetrahedron visited along an edge star walk: entered through the face
// holding m_in, left through the face holding m_out.
struct WalkStep {
    int tet;
    std::string m_in;
    std::string m_out;
};

struct StarWalk {
    std::vector<WalkStep> steps;
    FaceInstance start{0, 0};
    bool closed = false;
};

// The two non-edge vertices of an incident tetrahedron.
std::array<std::string, 2> off_edge_vertices(const Tetrahedron& t,
                                             const std::string& a,
                                             const std::string& b) {
    std::array<std::string, 2> out;
    int n = 0;
    for (const auto& v : t.vertices)
        if (v != a && v != b) out[std::size_t(n++)] = v;
    return out;
}

}  // namespace

Triangulation::Triangulation(std::vector<Tetrahedron> tets,
                             const std::vector<FacePairing>& explicit_pairings)
    : tets_(std::move(tets)) {
    for (int i = 0; i < int(tets_.size()); ++i) {
        const Tetrahedron& t = tets_[std::size_t(i)];
        if (t.id.empty())
            throw structural_error("tetrahedron " + std::to_string(i) +
                                   " has an empty id");
        if (!index_.emplace(t.id, i).second)
            throw structural_error("duplicate tetrahedron id '" + t.id + "'");
        if (t.sign != 1 && t.sign != -1)
            throw structural_error("tetrahedron '" + t.id +
                                   "' must have sign +1 or -1");
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q)
                if (t.vertices[std::size_t(p)] == t.vertices[std::size_t(q)])
                    throw structural_error("tetrahedron '" + t.id +
                                           "' repeats vertex '" +
                                           t.vertices[std::size_t(p)] + "'");
    }

    if (explicit_pairings.empty()) {
        std::map<std::array<std::string, 3>, std::vector<FaceInstance>> by_key;
        for (int i = 0; i < int(tets_.size()); ++i)
            for (int p = 0; p < 4; ++p)
                by_key[face_labels({i, p})].push_back({i, p});
        for (const auto& [key, instances] : by_key) {
            if (instances.size() == 1) {
                boundary_.push_back(instances[0]);
            } else if (instances.size() == 2) {
                pairs_.emplace_back(instances[0], instances[1]);
            } else {
                throw structural_error(
                    "face " + join_labels(key) + " is shared by " +
                    std::to_string(instances.size()) +
                    " tetrahedra; give explicit pairings");
            }
        }
    } else {
        std::set<FaceInstance> used;
        for (const auto& p : explicit_pairings) {
            const std::array<std::string, 3> key = sorted_triple(p.face);
            const FaceInstance fa = {tet_index(p.tet_a), 0};
            const FaceInstance fb = {tet_index(p.tet_b), 0};
            auto locate = [&](int tet) -> FaceInstance {
                for (int pos = 0; pos < 4; ++pos)
                    if (face_labels({tet, pos}) == key) return {tet, pos};
                throw structural_error(
                    "tetrahedron '" + tets_[std::size_t(tet)].id +
                    "' has no face " + join_labels(key));
            };
            const FaceInstance ia = locate(fa.tet);
            const FaceInstance ib = locate(fb.tet);
            if (ia == ib)
                throw structural_error("face " + join_labels(key) +
                                       " of tetrahedron '" + p.tet_a +
                                       "' paired with itself");
            if (!used.insert(ia).second || !used.insert(ib).second)
                throw structural_error("face " + join_labels(key) +
                                       " appears in more than one pairing");
            pairs_.emplace_back(std::min(ia, ib), std::max(ia, ib));
        }
        for (int i = 0; i < int(tets_.size()); ++i)
            for (int p = 0; p < 4; ++p)
                if (!used.count({i, p})) boundary_.push_back({i, p});
    }

    std::sort(pairs_.begin(), pairs_.end());
    std::sort(boundary_.begin(), boundary_.end());
    for (const auto& [x, y] : pairs_) {
        partner_[x] = y;
        partner_[y] = x;
    }
}

int Triangulation::tet_index(const std::string& id) const {
    const auto it = index_.find(id);
    if (it == index_.end())
        throw structural_error("unknown tetrahedron id '" + id + "'");
    return it->second;
}

std::array<std::string, 3> Triangulation::face_labels(
    const FaceInstance& f) const {
    const Tetrahedron& t = tets_[std::size_t(f.tet)];
    std::array<std::string, 3> out;
    int n = 0;
    for (int k = 0; k < 4; ++k)
        if (k != f.opposite) out[std::size_t(n++)] = t.vertices[std::size_t(k)];
    return sorted_triple(out);
}

std::optional<FaceInstance> Triangulation::partner(const FaceInstance& f) const {
    const auto it = partner_.find(f);
    if (it == partner_.end()) return std::nullopt;
    return it->second;
}

std::vector<FacePairing> Triangulation::pairing_records() const {
    std::vector<FacePairing> out;
    out.reserve(pairs_.size());
    for (const auto& [x, y] : pairs_)
        out.push_back({tets_[std::size_t(x.tet)].id, tets_[std::size_t(y.tet)].id,
                       face_labels(x)});
    return out;
}

namespace {

// Walks the star of the edge {a, b} starting from a fixed instance,
// following face pairings until the walk closes or reaches a boundary face.
StarWalk walk_star(const Triangulation& t, const std::string& a,
                   const std::string& b, const std::vector<int>& incident) {
    const auto& tets = t.tetrahedra();
    const std::string edge_name = a + "-" + b;

    // Face slots of an incident tetrahedron: the faces through the edge,
    // keyed by the non-edge vertex they omit.
    const auto slots = [&](int tet) -> std::array<FaceInstance, 2> {
        const auto off = off_edge_vertices(tets[std::size_t(tet)], a, b);
        return {FaceInstance{tet, role_of(tets[std::size_t(tet)], off[0]) - 1},
                FaceInstance{tet, role_of(tets[std::size_t(tet)], off[1]) - 1}};
    };
    // The non-edge vertex lying on a slot's face.
    const auto third = [&](const FaceInstance& f) -> std::string {
        const auto off = off_edge_vertices(tets[std::size_t(f.tet)], a, b);
        const std::string omitted =
            tets[std::size_t(f.tet)].vertices[std::size_t(f.opposite)];
        return off[0] == omitted ? off[1] : off[0];
    };

    const int start_tet = incident.front();
    const auto start_slots = slots(start_tet);
    const FaceInstance start = std::min(start_slots[0], start_slots[1]);

    StarWalk w;
    w.start = start;
    std::set<FaceInstance> entered;
    FaceInstance in = start;
    for (std::size_t guard = 0; guard <= 2 * incident.size(); ++guard) {
        if (!entered.insert(in).second)
            throw structural_error("edge " + edge_name +
                                   ": star is not a single cycle");
        const auto s = slots(in.tet);
        const FaceInstance out = (s[0] == in) ? s[1] : s[0];
        w.steps.push_back({in.tet, third(in), third(out)});
        const auto next = t.partner(out);
        if (!next) return w;  // boundary path (forward half)
        if (*next == start) {
            w.closed = true;
            return w;
        }
        if (std::find(incident.begin(), incident.end(), next->tet) ==
            incident.end())
            throw structural_error("edge " + edge_name +
                                   ": pairing leaves the edge star");
        in = *next;
    }
    throw structural_error("edge " + edge_name + ": star walk does not close");
}

}  // namespace

ComplianceReport validate_edge_compatibility(const Triangulation& t,
                                             const CrossRatioAssignment& a,
                                             double tol) {
    const auto& tets = t.tetrahedra();
    if (a.size() != tets.size())
        throw structural_error(
            "assignment size does not match the tetrahedron count");

    // Collect edges and their incident tetrahedra, deterministically ordered.
    std::map<std::pair<std::string, std::string>, std::vector<int>> stars;
    for (int i = 0; i < int(tets.size()); ++i)
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) {
                auto key = std::minmax(tets[std::size_t(i)].vertices[std::size_t(p)],
                                       tets[std::size_t(i)].vertices[std::size_t(q)]);
                stars[key].push_back(i);
            }

    ComplianceReport rep;
    rep.tolerance = tol;
    for (const auto& [edge, incident] : stars) {
        const auto& [va, vb] = edge;
        const std::string edge_name = va + "-" + vb;
        StarWalk w = walk_star(t, va, vb, incident);
        if (!w.closed) {
            // Boundary: continue the walk backwards from the start to cover
            // the whole path before reporting.
            std::set<int> seen;
            for (const auto& st : w.steps) seen.insert(st.tet);
            // Walk the other direction by starting from the partner of the
            // entry instance, if any.
            auto prev = t.partner(w.start);
            while (prev) {
                if (seen.count(prev->tet))
                    throw structural_error("edge " + edge_name +
                                           ": star is not a single path");
                seen.insert(prev->tet);
                const auto off = off_edge_vertices(
                    tets[std::size_t(prev->tet)], va, vb);
                const std::string omitted =
                    tets[std::size_t(prev->tet)]
                        .vertices[std::size_t(prev->opposite)];
                const std::string other = off[0] == omitted ? off[1] : off[0];
                prev = t.partner(FaceInstance{
                    prev->tet,
                    role_of(tets[std::size_t(prev->tet)], other) - 1});
            }
            if (seen.size() != incident.size())
                throw structural_error("edge " + edge_name +
                                       ": star is disconnected");
            rep.boundary.push_back(edge_name);
            continue;
        }
        if (w.steps.size() != incident.size())
            throw structural_error("edge " + edge_name +
                                   ": star cycle misses tetrahedra");

        Complex forward(1.0, 0.0), reverse(1.0, 0.0);
        for (const auto& st : w.steps) {
            const Tetrahedron& tet = tets[std::size_t(st.tet)];
            const CrossRatioStructure& s = a[std::size_t(st.tet)];
            forward *= quad_invariant(tet, s, va, vb, st.m_in, st.m_out);
            reverse *= quad_invariant(tet, s, vb, va, st.m_in, st.m_out);
        }
        const double res = std::max(std::abs(forward - Complex(1.0, 0.0)),
                                    std::abs(reverse - Complex(1.0, 0.0)));
        rep.residuals.push_back({edge_name, res});
    }
    finalize(rep);
    return rep;
}

ComplianceReport validate_face_compatibility(const Triangulation& t,
                                             const CrossRatioAssignment& a,
                                             double tol) {
    const auto& tets = t.tetrahedra();
    if (a.size() != tets.size())
        throw structural_error(
            "assignment size does not match the tetrahedron count");

    ComplianceReport rep;
    rep.tolerance = tol;
    for (const auto& fb : t.boundary_faces())
        rep.boundary.push_back(join_labels(t.face_labels(fb)) + "[" +
                               tets[std::size_t(fb.tet)].id + "]");

    for (const auto& [ia, ib] : t.pairings()) {
        const auto f = t.face_labels(ia);
        const Tetrahedron& ta = tets[std::size_t(ia.tet)];
        const Tetrahedron& tb = tets[std::size_t(ib.tet)];
        const std::string la = ta.vertices[std::size_t(ia.opposite)];
        const std::string lb = tb.vertices[std::size_t(ib.opposite)];
        const auto triple = [&](const Tetrahedron& tet,
                                const CrossRatioStructure& s,
                                const std::string& mid) {
            return quad_invariant(tet, s, f[0], mid, f[1], f[2]) *
                   quad_invariant(tet, s, f[2], mid, f[0], f[1]) *
                   quad_invariant(tet, s, f[1], mid, f[2], f[0]);
        };
        const Complex pa = triple(ta, a[std::size_t(ia.tet)], la);
        const Complex pb = triple(tb, a[std::size_t(ib.tet)], lb);
        double res = std::abs(pa - pb);

        if (induced_face_orientation(ta, ia.opposite) !=
            induced_face_orientation(tb, ib.opposite)) {
            // Opposite induced orientations: the six invariants along the
            // edges into the two opposite vertices multiply to 1.
            const auto into = [&](const Tetrahedron& tet,
                                  const CrossRatioStructure& s,
                                  const std::string& l) {
                Complex prod(1.0, 0.0);
                for (const auto& v : f)
                    prod *= s.invariant(role_of(tet, v), role_of(tet, l));
                return prod;
            };
            const Complex glue = into(ta, a[std::size_t(ia.tet)], la) *
                                 into(tb, a[std::size_t(ib.tet)], lb);
            res = std::max(res, std::abs(glue - Complex(1.0, 0.0)));
        }
        rep.residuals.push_back(
            {join_labels(f) + "[" + ta.id + "," + tb.id + "]", res});
    }
    finalize(rep);
    return rep;
}

double total_volume(const Triangulation& t, const CrossRatioAssignment& a) {
    const auto& tets = t.tetrahedra();
    if (a.size() != tets.size())
        throw structural_error(
            "assignment size does not match the tetrahedron count");
    std::vector<double> terms(tets.size());
    for (std::size_t i = 0; i < tets.size(); ++i)
        terms[i] = double(tets[i].sign) * volume(a[i]);
    return pairwise_sum(terms, 0, terms.size());
}

namespace {

// Relabels a structure to a target vertex order and returns the structure
// together with the parity-adjusted sign of the contribution.
std::pair<CrossRatioStructure, int> canonicalize(
    const Tetrahedron& t, const CrossRatioStructure& s,
    const std::array<std::string, 4>& target) {
    const SimplexOrdering o(role_of(t, target[0]), role_of(t, target[1]),
                            role_of(t, target[2]), role_of(t, target[3]));
    return {relabel(s, o), t.sign * (o.is_even() ? 1 : -1)};
}

std::string fresh_id(std::set<std::string>& taken, std::string candidate) {
    while (taken.count(candidate)) candidate += "'";
    taken.insert(candidate);
    return candidate;
}

// The id of the replacement tetrahedron whose vertex set contains the given
// face triple, in a map keyed by sorted triples.
struct Replacement {
    std::string id;
};

PachnerResult rebuild(const Triangulation& t, const CrossRatioAssignment& a,
                      const std::vector<int>& removed,
                      const std::vector<Tetrahedron>& added,
                      const std::vector<CrossRatioStructure>& added_structs,
                      const std::vector<FacePairing>& added_pairs) {
    const auto& tets = t.tetrahedra();
    std::vector<Tetrahedron> new_tets;
    CrossRatioAssignment new_assign;
    for (int i = 0; i < int(tets.size()); ++i) {
        if (std::find(removed.begin(), removed.end(), i) != removed.end())
            continue;
        new_tets.push_back(tets[std::size_t(i)]);
        new_assign.push_back(a[std::size_t(i)]);
    }
    for (std::size_t k = 0; k < added.size(); ++k) {
        new_tets.push_back(added[k]);
        new_assign.push_back(added_structs[k]);
    }

    // Carry surviving pairings over, retargeting the ones that referenced a
    // removed tetrahedron to the replacement holding the same face labels.
    const auto retarget = [&](const FaceInstance& inst) -> std::string {
        if (std::find(removed.begin(), removed.end(), inst.tet) ==
            removed.end())
            return tets[std::size_t(inst.tet)].id;
        const auto key = t.face_labels(inst);
        for (const auto& nt : added) {
            int hit = 0;
            for (const auto& lbl : key)
                for (const auto& v : nt.vertices)
                    if (lbl == v) ++hit;
            if (hit == 3) return nt.id;
        }
        throw structural_error("face " + join_labels(key) +
                               " of a removed tetrahedron has no replacement");
    };
    std::vector<FacePairing> records;
    for (const auto& [x, y] : t.pairings()) {
        const bool xr = std::find(removed.begin(), removed.end(), x.tet) !=
                        removed.end();
        const bool yr = std::find(removed.begin(), removed.end(), y.tet) !=
                        removed.end();
        if (xr && yr) continue;  // interior to the replaced cluster
        records.push_back({retarget(x), retarget(y), t.face_labels(x)});
    }
    for (const auto& p : added_pairs) records.push_back(p);

    return {Triangulation(std::move(new_tets), records),
            std::move(new_assign)};
}

}  // namespace

PachnerResult pachner_23(const Triangulation& t, const CrossRatioAssignment& a,
                         const std::array<std::string, 3>& face) {
    const auto& tets = t.tetrahedra();
    if (a.size() != tets.size())
        throw structural_error(
            "assignment size does not match the tetrahedron count");
    const auto key = sorted_triple(face);

    std::vector<std::pair<FaceInstance, FaceInstance>> hits;
    for (const auto& pr : t.pairings())
        if (t.face_labels(pr.first) == key) hits.push_back(pr);
    if (hits.empty())
        throw structural_error("no interior face " + join_labels(key));
    if (hits.size() > 1)
        throw structural_error("face " + join_labels(key) +
                               " is glued more than once; not supported");
    const auto [ia, ib] = hits.front();
    if (ia.tet == ib.tet)
        throw structural_error("face " + join_labels(key) +
                               " is glued to the same tetrahedron");
    const Tetrahedron& t1 = tets[std::size_t(ia.tet)];
    const Tetrahedron& t2 = tets[std::size_t(ib.tet)];
    const std::string l = t1.vertices[std::size_t(ia.opposite)];
    const std::string lp = t2.vertices[std::size_t(ib.opposite)];
    if (l == lp)
        throw structural_error(
            "the two tetrahedra span only four vertices; 2-3 move needs five");

    const auto [s1, e1] = canonicalize(t1, a[std::size_t(ia.tet)],
                                       {key[0], key[1], key[2], l});
    const auto [s2, e2] = canonicalize(t2, a[std::size_t(ib.tet)],
                                       {key[0], key[1], key[2], lp});
    if (e2 != -e1)
        throw structural_error(
            "2-3 move needs opposite effective orientations across the face");

    const auto x = s1.free_params();
    const auto y = s2.free_params();
    ColumnQuintuple cols = [&] {
        try {
            const FivePointCoordinates c =
                derive_dependent(x[0], x[1], x[2], x[3], y[0], y[1], y[3]);
            return assemble_columns(c);
        } catch (const degeneracy_error& e) {
            throw degeneracy_error(std::string("pachner_23 refused: ") +
                                   e.what());
        }
    }();

    std::set<std::string> taken;
    for (const auto& tet : tets) taken.insert(tet.id);
    const std::string base = t1.id + "*" + t2.id;
    const std::string id3 = fresh_id(taken, base + ".a");
    const std::string id4 = fresh_id(taken, base + ".b");
    const std::string id5 = fresh_id(taken, base + ".c");

    const std::vector<Tetrahedron> added = {
        {id3, {key[0], key[1], l, lp}, -e1},
        {id4, {key[0], key[2], l, lp}, e1},
        {id5, {key[1], key[2], l, lp}, -e1}};
    const std::vector<CrossRatioStructure> added_structs = {
        cols.columns[2], cols.columns[3], cols.columns[4]};
    const std::vector<FacePairing> added_pairs = {
        {id3, id4, {key[0], l, lp}},
        {id3, id5, {key[1], l, lp}},
        {id4, id5, {key[2], l, lp}}};

    return rebuild(t, a, {ia.tet, ib.tet}, added, added_structs, added_pairs);
}

PachnerResult pachner_32(const Triangulation& t, const CrossRatioAssignment& a,
                         const std::string& l, const std::string& lp) {
    const auto& tets = t.tetrahedra();
    if (a.size() != tets.size())
        throw structural_error(
            "assignment size does not match the tetrahedron count");
    if (l == lp) throw structural_error("edge endpoints must differ");

    std::vector<int> star;
    for (int i = 0; i < int(tets.size()); ++i) {
        const auto& v = tets[std::size_t(i)].vertices;
        const bool has_l = std::find(v.begin(), v.end(), l) != v.end();
        const bool has_lp = std::find(v.begin(), v.end(), lp) != v.end();
        if (has_l && has_lp) star.push_back(i);
    }
    if (star.size() != 3)
        throw structural_error("edge " + l + "-" + lp + " lies in " +
                               std::to_string(star.size()) +
                               " tetrahedra; 3-2 move needs exactly three");

    // The three off-edge vertex pairs must cover three labels pairwise.
    std::set<std::string> fset;
    std::array<std::array<std::string, 2>, 3> off;
    for (int k = 0; k < 3; ++k) {
        off[std::size_t(k)] =
            off_edge_vertices(tets[std::size_t(star[std::size_t(k)])], l, lp);
        fset.insert(off[std::size_t(k)][0]);
        fset.insert(off[std::size_t(k)][1]);
    }
    if (fset.size() != 3)
        throw structural_error("edge " + l + "-" + lp +
                               ": star does not span exactly five vertices");
    std::array<std::string, 3> f;
    std::copy(fset.begin(), fset.end(), f.begin());
    // Identify which tetrahedron misses which face vertex.
    std::array<int, 3> tet_missing{-1, -1, -1};  // [k] misses f[k]
    for (int k = 0; k < 3; ++k) {
        const auto& pair = off[std::size_t(k)];
        for (int m = 0; m < 3; ++m)
            if (f[std::size_t(m)] != pair[0] && f[std::size_t(m)] != pair[1]) {
                if (tet_missing[std::size_t(m)] != -1)
                    throw structural_error(
                        "edge " + l + "-" + lp +
                        ": star does not form the three-tetrahedron pattern");
                tet_missing[std::size_t(m)] = star[std::size_t(k)];
            }
    }
    const int t12 = tet_missing[2];  // contains f0, f1
    const int t13 = tet_missing[1];  // contains f0, f2
    const int t23 = tet_missing[0];  // contains f1, f2

    // The three internal faces must actually be glued pairwise.
    const auto expect_partner = [&](int tet, const std::string& omitted,
                                    int other_tet,
                                    const std::string& other_omitted) {
        const FaceInstance inst{
            tet, role_of(tets[std::size_t(tet)], omitted) - 1};
        const auto p = t.partner(inst);
        const FaceInstance want{
            other_tet, role_of(tets[std::size_t(other_tet)], other_omitted) - 1};
        if (!p || !(*p == want))
            throw structural_error("edge " + l + "-" + lp +
                                   ": the three tetrahedra are not glued "
                                   "around the edge");
    };
    expect_partner(t12, f[1], t13, f[2]);  // face {f0, l, lp}
    expect_partner(t12, f[0], t23, f[2]);  // face {f1, l, lp}
    expect_partner(t13, f[0], t23, f[1]);  // face {f2, l, lp}

    const auto [s3, e3] = canonicalize(tets[std::size_t(t12)],
                                       a[std::size_t(t12)],
                                       {f[0], f[1], l, lp});
    const auto [s4, e4] = canonicalize(tets[std::size_t(t13)],
                                       a[std::size_t(t13)],
                                       {f[0], f[2], l, lp});
    const auto [s5, e5] = canonicalize(tets[std::size_t(t23)],
                                       a[std::size_t(t23)],
                                       {f[1], f[2], l, lp});
    if (e4 != -e3 || e5 != e3)
        throw structural_error(
            "3-2 move needs the alternating orientation pattern around the "
            "edge");
    const int g = e4;

    const auto c3 = s3.free_params();
    const auto c4 = s4.free_params();
    const auto c5 = s5.free_params();
    const Complex w3 = c4[2], w4 = c4[3], z3 = c5[2], z4 = c5[3];
    if (std::abs(c3[0] - c4[0]) < 1e-12)
        throw degeneracy_error(
            "pachner_32 refused: vanishing factor (first entries of the "
            "ratio and difference columns coincide)");
    const Complex x1 = (1.0 - c4[0]) / (c3[0] - c4[0]);
    const Complex y1 = c3[0] * x1;
    const Complex x2 =
        (1.0 - c5[0] * c3[1]) / (c3[1] * (1.0 - c5[0]));
    const Complex y2 = c3[1] * x2;
    const Complex x3 = (1.0 - c4[1]) * c5[1] / (c4[1] * (1.0 - c5[1]));
    const Complex y3 = x3 * c4[1] / c5[1];
    const Complex x4 = z3 * (1.0 - w3) / (w3 * (1.0 - z3));
    const Complex y4 = (1.0 - w4) / (1.0 - z4);

    CrossRatioStructure s1 = [&] {
        try {
            return from_free_params(x1, x2, x3, x4);
        } catch (const std::domain_error& e) {
            throw degeneracy_error(std::string("pachner_32 refused: ") +
                                   e.what());
        }
    }();
    CrossRatioStructure s2 = [&] {
        try {
            return from_free_params(y1, y2, y3, y4);
        } catch (const std::domain_error& e) {
            throw degeneracy_error(std::string("pachner_32 refused: ") +
                                   e.what());
        }
    }();

    std::set<std::string> taken;
    for (const auto& tet : tets) taken.insert(tet.id);
    const std::string base = tets[std::size_t(t12)].id + "*" +
                             tets[std::size_t(t13)].id + "*" +
                             tets[std::size_t(t23)].id;
    const std::string id1 = fresh_id(taken, base + ".a");
    const std::string id2 = fresh_id(taken, base + ".b");

    const std::vector<Tetrahedron> added = {{id1, {f[0], f[1], f[2], l}, g},
                                            {id2, {f[0], f[1], f[2], lp}, -g}};
    const std::vector<CrossRatioStructure> added_structs = {s1, s2};
    const std::vector<FacePairing> added_pairs = {
        {id1, id2, {f[0], f[1], f[2]}}};

    return rebuild(t, a, {t12, t13, t23}, added, added_structs, added_pairs);
}

CrossRatioAssignment geometric_assignment(
    const Triangulation& t,
    const std::map<std::string, HeisenbergPoint>& positions) {
    const auto at = [&positions](const std::string& label) {
        const auto it = positions.find(label);
        if (it == positions.end())
            throw structural_error("no position for vertex '" + label + "'");
        return it->second;
    };
    CrossRatioAssignment out;
    out.reserve(t.tetrahedra().size());
    for (const auto& tet : t.tetrahedra()) {
        try {
            out.push_back(cross_ratio_structure_of(at(tet.vertices[0]),
                                                   at(tet.vertices[1]),
                                                   at(tet.vertices[2]),
                                                   at(tet.vertices[3]))
                              .structure());
        } catch (const degeneracy_error& e) {
            throw degeneracy_error("tetrahedron '" + tet.id +
                                   "': " + e.what());
        }
    }
    return out;
}

}  // namespace crv
