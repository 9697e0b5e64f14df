#include "crvol/pentad.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace crv {

namespace {

constexpr double kDegenerateTol = 1e-12;

void check_value(Complex v, const std::string& name) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw degeneracy_error("five-point coordinates: " + name +
                               " is not finite");
    if (endpoint_distance(v) <= kDegenerateTol)
        throw degeneracy_error("five-point coordinates: " + name +
                               " lies on {0,1}");
}

void check_factor(Complex f, const char* name) {
    if (std::abs(f) < kDegenerateTol)
        throw degeneracy_error(
            std::string("five-point coordinates: vanishing factor ") + name);
}

// Builds the five structures from an explicit 5x4 entry table, reporting the
// offending column and row on degeneracy.
ColumnQuintuple build_columns(const std::array<std::array<Complex, 4>, 5>& e) {
    auto make = [&](int col) {
        const auto& row = e[std::size_t(col)];
        for (int r = 0; r < 4; ++r)
            if (endpoint_distance(row[std::size_t(r)]) <= kDegenerateTol)
                throw degeneracy_error("column " + std::to_string(col + 1) +
                                       " row " + std::to_string(r + 1) +
                                       " entry lies on {0,1}");
        try {
            return from_free_params(row[0], row[1], row[2], row[3]);
        } catch (const std::domain_error& err) {
            throw degeneracy_error("column " + std::to_string(col + 1) + ": " +
                                   err.what());
        }
    };
    return ColumnQuintuple{{make(0), make(1), make(2), make(3), make(4)}};
}

std::array<std::array<Complex, 4>, 5> entry_table(const FivePointCoordinates& c) {
    const Complex one(1.0, 0.0);
    return {{{c.x1, c.x2, c.x3, c.x4},
             {c.y1, c.y2, c.y3, c.y4},
             {c.y1 / c.x1, c.y2 / c.x2, c.w3 / c.z3, c.w4 / c.z4},
             {(one - c.y1) / (one - c.x1), (one - c.y3) / (one - c.x3), c.w3,
              c.w4},
             {c.x2 * (one - c.y2) / (c.y2 * (one - c.x2)),
              c.x3 * (one - c.y3) / (c.y3 * (one - c.x3)), c.z3, c.z4}}};
}

}  // namespace

FivePointCoordinates derive_dependent(Complex x1, Complex x2, Complex x3,
                                      Complex x4, Complex y1, Complex y2,
                                      Complex y4) {
    check_value(x1, "x1");
    check_value(x2, "x2");
    check_value(x3, "x3");
    check_value(x4, "x4");
    check_value(y1, "y1");
    check_value(y2, "y2");
    check_value(y4, "y4");
    const Complex q =
        -y1 * x1 * y2 - x1 * x2 + y1 * x1 * x2 + x1 + y1 * y2 - y1;
    check_factor(q, "Q=0");
    check_factor(x1 - y1, "x1=y1");
    check_factor(x2 - y2, "x2=y2");

    FivePointCoordinates c;
    c.x1 = x1;
    c.x2 = x2;
    c.x3 = x3;
    c.x4 = x4;
    c.y1 = y1;
    c.y2 = y2;
    c.y4 = y4;
    c.q = q;
    c.y3 = y1 * x3 * (y2 - 1.0) * (x1 - 1.0) / (x1 * (y1 - 1.0) * (x2 - 1.0));
    c.z3 = x4 * q / (y1 * (x4 - 1.0) * (x2 - y2) * (x1 - 1.0));
    c.w3 = q / ((x4 - 1.0) * (x1 - y1) * (x2 - 1.0));
    c.z4 = x1 * (y4 - 1.0) * (y1 - 1.0) * (x2 - y2) / (y4 * q);
    c.w4 = (y4 - 1.0) * (y2 - 1.0) * (x1 - y1) / q;
    check_value(c.y3, "y3");
    check_value(c.z3, "z3");
    check_value(c.w3, "w3");
    check_value(c.z4, "z4");
    check_value(c.w4, "w4");
    return c;
}

ColumnQuintuple assemble_columns(const FivePointCoordinates& c) {
    return build_columns(entry_table(c));
}

ColumnQuintuple prop1_assemble(Complex x1, Complex x2, Complex x3, Complex y1,
                               Complex y2, Complex y3, Complex z3, Complex z4,
                               Complex w3, Complex w4) {
    const Complex params[10] = {x1, x2, x3, y1, y2, y3, z3, z4, w3, w4};
    const char* names[10] = {"x1", "x2", "x3", "y1", "y2",
                             "y3", "z3", "z4", "w3", "w4"};
    for (int k = 0; k < 10; ++k) check_value(params[k], names[k]);
    const Complex one(1.0, 0.0);
    const Complex x4 = z3 * (one - w3) / (w3 * (one - z3));
    const Complex y4 = (one - w4) / (one - z4);
    check_value(x4, "x4");
    check_value(y4, "y4");
    return build_columns({{{x1, x2, x3, x4},
                           {y1, y2, y3, y4},
                           {y1 / x1, y2 / x2, w3 / z3, w4 / z4},
                           {(one - y1) / (one - x1), (one - y3) / (one - x3),
                            w3, w4},
                           {x2 * (one - y2) / (y2 * (one - x2)),
                            x3 * (one - y3) / (y3 * (one - x3)), z3, z4}}});
}

ColumnQuintuple assemble_from_structures(std::array<CrossRatioStructure, 5> cols) {
    return ColumnQuintuple{std::move(cols)};
}

Complex quadruple_invariant(const ColumnQuintuple& q, int a, int b, int c,
                            int d) {
    const int lbl[4] = {a, b, c, d};
    std::array<bool, 6> seen{};
    for (int v : lbl) {
        if (v < 1 || v > 5 || seen[std::size_t(v)])
            throw std::domain_error(
                "quadruple_invariant: labels must be distinct and in 1..5");
        seen[std::size_t(v)] = true;
    }
    int missing = 0;
    for (int v = 1; v <= 5; ++v)
        if (!seen[std::size_t(v)]) missing = v;
    int subset[4];
    int n = 0;
    for (int v = 1; v <= 5; ++v)
        if (v != missing) subset[n++] = v;
    auto role = [&subset](int v) {
        for (int r = 0; r < 4; ++r)
            if (subset[r] == v) return r + 1;
        return 0;
    };
    return q.columns[std::size_t(5 - missing)].invariant(
        SimplexOrdering(role(a), role(b), role(c), role(d)));
}

double edge_compatibility_defect(const ColumnQuintuple& q) {
    double worst = 0.0;
    for (int i = 1; i <= 5; ++i)
        for (int j = 1; j <= 5; ++j) {
            if (i == j) continue;
            int comp[3];
            int n = 0;
            for (int v = 1; v <= 5; ++v)
                if (v != i && v != j) comp[n++] = v;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    if (a == b) continue;
                    const int k = comp[a], l = comp[b], m = comp[3 - a - b];
                    const Complex lhs = quadruple_invariant(q, i, j, k, l);
                    const Complex rhs = quadruple_invariant(q, i, j, k, m) *
                                        quadruple_invariant(q, i, j, m, l);
                    worst = std::max(worst, std::abs(lhs - rhs));
                }
        }
    return worst;
}

double face_compatibility_defect(const ColumnQuintuple& q) {
    double worst = 0.0;
    for (int j = 1; j <= 5; ++j)
        for (int m = j + 1; m <= 5; ++m) {
            int comp[3];
            int n = 0;
            for (int v = 1; v <= 5; ++v)
                if (v != j && v != m) comp[n++] = v;
            const int i = comp[0], k = comp[1], l = comp[2];
            auto triple = [&](int mid) {
                return quadruple_invariant(q, i, mid, k, l) *
                       quadruple_invariant(q, l, mid, i, k) *
                       quadruple_invariant(q, k, mid, l, i);
            };
            worst = std::max(worst, std::abs(triple(j) - triple(m)));
        }
    return worst;
}

double five_term_volume_defect(const FivePointCoordinates& c) {
    const ColumnQuintuple q = assemble_columns(c);
    double sum = 0.0;
    for (int k = 0; k < 5; ++k)
        sum += ColumnQuintuple::signs[std::size_t(k)] *
               volume(q.columns[std::size_t(k)]);
    return std::fabs(sum);
}

std::pair<FivePointCoordinates, ColumnQuintuple> from_five_points(
    const HeisenbergPoint& p1, const HeisenbergPoint& p2,
    const HeisenbergPoint& p3, const HeisenbergPoint& p4,
    const HeisenbergPoint& p5) {
    const auto x = cross_ratio_structure_of(p1, p2, p3, p4).structure()
                       .free_params();
    const auto y = cross_ratio_structure_of(p1, p2, p3, p5).structure()
                       .free_params();
    FivePointCoordinates c =
        derive_dependent(x[0], x[1], x[2], x[3], y[0], y[1], y[3]);
    ColumnQuintuple q = assemble_columns(c);
    return {c, std::move(q)};
}

}  // namespace crv
