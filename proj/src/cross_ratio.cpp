#include "crvol/cross_ratio.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace crv {

namespace {

constexpr double kEndpointGuard = 1e-12;

void check_admissible(Complex z, const char* name) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::domain_error(std::string("cross-ratio entry ") + name +
                                " is not finite");
    if (endpoint_distance(z) <= kEndpointGuard)
        throw std::domain_error(std::string("cross-ratio entry ") + name +
                                " is degenerate (too close to 0 or 1)");
}

// Relative distance used by branch classification.
double rel_gap(Complex a, Complex b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

SimplexOrdering::SimplexOrdering(int a, int b, int c, int d) : v_{a, b, c, d} {
    std::array<bool, 5> seen{};
    for (int x : v_) {
        if (x < 1 || x > 4 || seen[std::size_t(x)])
            throw std::domain_error(
                "SimplexOrdering: labels must be a permutation of 1,2,3,4");
        seen[std::size_t(x)] = true;
    }
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (v_[std::size_t(i)] > v_[std::size_t(j)]) ++inversions;
    even_ = (inversions % 2 == 0);
}

TriangleShape::TriangleShape(Complex z1) {
    check_admissible(z1, "z1");
    Complex z2 = 1.0 / (1.0 - z1);
    Complex z3 = 1.0 - 1.0 / z1;
    check_admissible(z2, "z2");
    check_admissible(z3, "z3");
    z_ = {z1, z2, z3};
}

TriangleShape::TriangleShape(Complex z1, Complex z2, Complex z3) : z_{z1, z2, z3} {
    check_admissible(z1, "z1");
    check_admissible(z2, "z2");
    check_admissible(z3, "z3");
    const Complex expect[3] = {1.0 / (1.0 - z1), 1.0 / (1.0 - z2), 1.0 / (1.0 - z3)};
    const Complex actual[3] = {z2, z3, z1};
    for (int k = 0; k < 3; ++k)
        if (rel_gap(expect[k], actual[k]) > 1e-9)
            throw std::domain_error(
                "TriangleShape: entries do not satisfy the cyclic relations");
}

Complex CrossRatioStructure::invariant(int i, int j) const {
    if (i < 1 || i > 4 || j < 1 || j > 4 || i == j)
        throw std::domain_error(
            "CrossRatioStructure::invariant: labels must be distinct and in 1..4");
    return t_[std::size_t(i)][std::size_t(j)];
}

Complex CrossRatioStructure::invariant(const SimplexOrdering& o) const {
    Complex z = invariant(o[0], o[1]);
    return o.is_even() ? z : 1.0 / z;
}

CrossRatioStructure from_free_params(Complex z12, Complex z21, Complex z34,
                                     Complex z43) {
    check_admissible(z12, "z12");
    check_admissible(z21, "z21");
    check_admissible(z34, "z34");
    check_admissible(z43, "z43");

    CrossRatioStructure s;
    auto fill_vertex = [&s](int v, int a, int b, int c, Complex z) {
        // Invariant triple around vertex v in cyclic order (a, b, c).
        Complex zb = 1.0 / (1.0 - z);
        Complex zc = 1.0 - 1.0 / z;
        const std::string base = "z" + std::to_string(v);
        check_admissible(zb, (base + std::to_string(b)).c_str());
        check_admissible(zc, (base + std::to_string(c)).c_str());
        s.t_[std::size_t(v)][std::size_t(a)] = z;
        s.t_[std::size_t(v)][std::size_t(b)] = zb;
        s.t_[std::size_t(v)][std::size_t(c)] = zc;
    };
    fill_vertex(1, 2, 3, 4, z12);
    fill_vertex(2, 1, 4, 3, z21);
    fill_vertex(3, 4, 1, 2, z34);
    fill_vertex(4, 3, 2, 1, z43);
    return s;
}

double volume(const CrossRatioStructure& s) {
    double v = 0.0;
    for (auto z : s.free_params()) v += bloch_wigner(z).value;
    return v;
}

CrossRatioStructure hyperbolic_lift(Complex z12, Complex z21) {
    check_admissible(z12, "z12");
    check_admissible(z21, "z21");
    Complex z34 = -z12 * (1.0 - z21) / (1.0 - z12);
    Complex z43 = -z21 * (1.0 - z12) / (1.0 - z21);
    return from_free_params(z12, z21, z34, z43);
}

CrossRatioStructure diagonal_structure(Complex z) {
    return from_free_params(z, z, z, z);
}

BranchClass classify_branch(const CrossRatioStructure& s, double tol) {
    const Complex z12 = s.invariant(1, 2), z21 = s.invariant(2, 1);
    const Complex z34 = s.invariant(3, 4), z43 = s.invariant(4, 3);

    // Opposite-edge product equations z_ij z_ji = z_kl z_lk.
    const Complex a12 = z12 * z21;
    const Complex a13 = s.invariant(1, 3) * s.invariant(3, 1);
    const Complex a14 = s.invariant(1, 4) * s.invariant(4, 1);
    const Complex a34 = z34 * z43;
    const Complex a24 = s.invariant(2, 4) * s.invariant(4, 2);
    const Complex a23 = s.invariant(2, 3) * s.invariant(3, 2);
    const double eq_residual =
        std::max({rel_gap(a12, a34), rel_gap(a13, a24), rel_gap(a14, a23)});
    if (eq_residual > tol) return BranchClass::Neither;

    const double hyp_residual =
        std::max(rel_gap(z34, -z12 * (1.0 - z21) / (1.0 - z12)),
                 rel_gap(z43, -z21 * (1.0 - z12) / (1.0 - z21)));
    const double diag_residual =
        std::max({rel_gap(z12, z21), rel_gap(z12, z34), rel_gap(z12, z43)});

    const bool hyp = hyp_residual <= tol;
    const bool diag = diag_residual <= tol;
    if (hyp && diag) return BranchClass::BothDegenerate;
    if (hyp) return BranchClass::HyperbolicBranch;
    if (diag) return BranchClass::DiagonalBranch;
    return BranchClass::Neither;
}

std::array<Complex, 3> edge_products(const CrossRatioStructure& s) {
    return {s.invariant(1, 2) * s.invariant(2, 1),
            s.invariant(3, 1) * s.invariant(1, 3),
            s.invariant(1, 4) * s.invariant(4, 1)};
}

TriangleShape vertex_triangle(const CrossRatioStructure& s, VertexLabel v) {
    static constexpr int cycle[5][3] = {
        {0, 0, 0}, {2, 3, 4}, {1, 4, 3}, {4, 1, 2}, {3, 2, 1}};
    const int* c = cycle[v.index()];
    return TriangleShape(s.invariant(v.index(), c[0]), s.invariant(v.index(), c[1]),
                         s.invariant(v.index(), c[2]));
}

CrossRatioStructure relabel(const CrossRatioStructure& s, const SimplexOrdering& o) {
    auto at = [&](int a, int b, int c, int d) {
        return s.invariant(
            SimplexOrdering(o[a - 1], o[b - 1], o[c - 1], o[d - 1]));
    };
    return from_free_params(at(1, 2, 3, 4), at(2, 1, 4, 3), at(3, 4, 1, 2),
                            at(4, 3, 2, 1));
}

}  // namespace crv
