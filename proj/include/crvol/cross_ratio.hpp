#pragma once

#include <array>

#include "crvol/dilog.hpp"
#include "crvol/types.hpp"

namespace crv {

// Vertex of an abstract tetrahedron, labelled 1..4.
class VertexLabel {
public:
    explicit VertexLabel(int index) : i_(index) {
        if (index < 1 || index > 4)
            throw std::domain_error("VertexLabel: index must be 1..4");
    }
    int index() const { return i_; }
    friend bool operator==(const VertexLabel&, const VertexLabel&) = default;

private:
    int i_;
};

// Ordering of the four vertex labels (a permutation of 1,2,3,4) together with
// its parity.
class SimplexOrdering {
public:
    SimplexOrdering(int a, int b, int c, int d);

    int operator[](int pos) const { return v_[std::size_t(pos)]; }
    bool is_even() const { return even_; }
    const std::array<int, 4>& labels() const { return v_; }

private:
    std::array<int, 4> v_;
    bool even_;
};

// Similarity class of a Euclidean triangle: three invariants cyclically
// related by z -> 1/(1-z), none of them 0 or 1.
class TriangleShape {
public:
    // Derives the second and third invariant from the first.
    explicit TriangleShape(Complex z1);
    // Accepts an explicitly given triple, validating the cyclic relations to
    // within relative 1e-9.
    TriangleShape(Complex z1, Complex z2, Complex z3);

    Complex z1() const { return z_[0]; }
    Complex z2() const { return z_[1]; }
    Complex z3() const { return z_[2]; }
    const std::array<Complex, 3>& entries() const { return z_; }

private:
    std::array<Complex, 3> z_;
};

enum class BranchClass {
    HyperbolicBranch,
    DiagonalBranch,
    BothDegenerate,
    Neither,
};

// The twelve edge invariants z_ij (i != j) of a tetrahedron carrying one
// cross-ratio per ordered vertex pair. The four free parameters are
// (z12, z21, z34, z43); the remaining eight follow from the similarity
// relations around each vertex:
//     vertex 1: z13 = 1/(1-z12), z14 = 1 - 1/z12
//     vertex 2: z24 = 1/(1-z21), z23 = 1 - 1/z21
//     vertex 3: z31 = 1/(1-z34), z32 = 1 - 1/z34
//     vertex 4: z42 = 1/(1-z43), z41 = 1 - 1/z43
// Every entry stays off {0, 1}; construction rejects parameters within 1e-12
// of those points.
class CrossRatioStructure {
public:
    // Table entry z_ij for ordered pair (i, j), labels in 1..4.
    Complex invariant(int i, int j) const;

    // Invariant attached to an arbitrary vertex ordering: the table entry of
    // the leading pair for even orderings, its reciprocal for odd ones.
    Complex invariant(const SimplexOrdering& o) const;

    std::array<Complex, 4> free_params() const {
        return {invariant(1, 2), invariant(2, 1), invariant(3, 4), invariant(4, 3)};
    }

    friend CrossRatioStructure from_free_params(Complex z12, Complex z21,
                                                Complex z34, Complex z43);

private:
    CrossRatioStructure() = default;
    std::array<std::array<Complex, 5>, 5> t_{};  // 1-based, diagonal unused
};

// Builds the full table from the four free parameters. Throws
// std::domain_error naming the offending entry when a parameter (or a derived
// entry) falls within 1e-12 of {0, 1} or is non-finite.
CrossRatioStructure from_free_params(Complex z12, Complex z21, Complex z34,
                                     Complex z43);

// Sum of the single-valued dilogarithm over the four free parameters,
//     vol(s) = D(z12) + D(z21) + D(z34) + D(z43).
double volume(const CrossRatioStructure& s);

// Structure on the branch where opposite-edge products match and carry
// triangle-similarity relations:
//     z34 = -z12 (1-z21)/(1-z12),   z43 = -z21 (1-z12)/(1-z21).
CrossRatioStructure hyperbolic_lift(Complex z12, Complex z21);

// Structure with all four free parameters equal.
CrossRatioStructure diagonal_structure(Complex z);

// Decides which component of the opposite-edge-product variety a structure
// sits on. First the three equations z_ij z_ji = z_kl z_lk are tested with
// residuals normalised by max(1, magnitudes); failure gives Neither. Then the
// two branch parametrisations are tested the same way.
BranchClass classify_branch(const CrossRatioStructure& s, double tol = 1e-9);

// Opposite-edge products (z12 z21, z31 z13, z14 z41). On the hyperbolic
// branch these satisfy the same cyclic relations as a TriangleShape and
// multiply to -1; on the diagonal branch they multiply to +1.
std::array<Complex, 3> edge_products(const CrossRatioStructure& s);

// The cyclically ordered invariant triple at one vertex:
//     v=1: (z12, z13, z14)   v=2: (z21, z24, z23)
//     v=3: (z34, z31, z32)   v=4: (z43, z42, z41)
TriangleShape vertex_triangle(const CrossRatioStructure& s, VertexLabel v);

// Structure seen after renaming the vertices: the invariant the result
// attaches to an ordering (a,b,c,d) is the invariant s attaches to
// (o[a-1], o[b-1], o[c-1], o[d-1]). Valid for every permutation o.
CrossRatioStructure relabel(const CrossRatioStructure& s, const SimplexOrdering& o);

}  // namespace crv
