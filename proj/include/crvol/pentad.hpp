#pragma once

#include <array>
#include <utility>

#include "crvol/cross_ratio.hpp"
#include "crvol/heisenberg.hpp"
#include "crvol/types.hpp"

namespace crv {

// Cross-ratio coordinates of a five-point configuration. Seven values are
// free; the other five are rational in them, all sharing the polynomial
//     Q = -y1 x1 y2 - x1 x2 + y1 x1 x2 + x1 + y1 y2 - y1.
// Every value stays off {0, 1}.
struct FivePointCoordinates {
    Complex x1, x2, x3, x4;  // free
    Complex y1, y2, y4;      // free
    Complex y3, z3, w3, z4, w4;  // derived
    Complex q;                   // value of the shared polynomial
};

// Populates the dependent values:
//     y3 = y1 x3 (y2-1)(x1-1) / (x1 (y1-1)(x2-1))
//     z3 = x4 Q / (y1 (x4-1)(x2-y2)(x1-1))
//     w3 = Q / ((x4-1)(x1-y1)(x2-1))
//     z4 = x1 (y4-1)(y1-1)(x2-y2) / (y4 Q)
//     w4 = (y4-1)(y2-1)(x1-y1) / Q
// Throws degeneracy_error naming the vanishing factor (x2=y2, x4=1, Q=0, ...)
// when a denominator factor falls below 1e-12, and when any of the twelve
// coordinate values lands on {0, 1}.
FivePointCoordinates derive_dependent(Complex x1, Complex x2, Complex x3,
                                      Complex x4, Complex y1, Complex y2,
                                      Complex y4);

// The five tetrahedra spanned by omitting one of five labelled points, as a
// formal alternating sum: column k carries the 4-subset omitting label 6-k,
// with signs (+,-,+,-,+):
//     column 1: (u1,u2,u3,u4)   column 2: (u1,u2,u3,u5)
//     column 3: (u1,u2,u4,u5)   column 4: (u1,u3,u4,u5)
//     column 5: (u2,u3,u4,u5)
struct ColumnQuintuple {
    std::array<CrossRatioStructure, 5> columns;
    static constexpr std::array<int, 5> signs{+1, -1, +1, -1, +1};
};

// Builds the quintuple from coordinates; the free parameters per column are
//     column 1: (x1, x2, x3, x4)
//     column 2: (y1, y2, y3, y4)
//     column 3: (y1/x1, y2/x2, w3/z3, w4/z4)
//     column 4: ((1-y1)/(1-x1), (1-y3)/(1-x3), w3, w4)
//     column 5: (x2(1-y2)/(y2(1-x2)), x3(1-y3)/(y3(1-x3)), z3, z4)
// Throws degeneracy_error naming column and row for an entry on {0, 1}.
ColumnQuintuple assemble_columns(const FivePointCoordinates& c);

// Ten-parameter variant: the same array with the column-1 row-4 and
// column-2 row-4 entries replaced by their rational expressions
//     x4 = z3(1-w3) / (w3(1-z3)),   y4 = (1-w4) / (1-z4).
// The result satisfies the edge equations but generically not the face ones.
ColumnQuintuple prop1_assemble(Complex x1, Complex x2, Complex x3, Complex y1,
                               Complex y2, Complex y3, Complex z3, Complex z4,
                               Complex w3, Complex w4);

// Wraps five arbitrary structures (no compatibility implied); used for
// perturbation studies and Jacobian work.
ColumnQuintuple assemble_from_structures(std::array<CrossRatioStructure, 5> cols);

// Invariant of an ordered quadruple (a,b,c,d) of distinct labels in 1..5,
// looked up in the column omitting the missing label, with the roles given by
// the positions of a,b,c,d in the sorted 4-subset.
Complex quadruple_invariant(const ColumnQuintuple& q, int a, int b, int c, int d);

// max |(ijkl) - (ijkm)(ijml)| over the 20 ordered pairs (i,j) and the 6
// ordered choices of (k,l) from the complement (m the remaining label).
double edge_compatibility_defect(const ColumnQuintuple& q);

// max |(ijkl)(ljik)(kjli) - (imkl)(lmik)(kmli)| over the 10 unordered pairs
// {j,m}, with (i,k,l) the sorted complement.
double face_compatibility_defect(const ColumnQuintuple& q);

// | sum over columns of sign * volume |.
double five_term_volume_defect(const FivePointCoordinates& c);

// Coordinates and columns of five actual points on S^3: column 1 is the
// structure of (p1,p2,p3,p4), column 2 of (p1,p2,p3,p5); the free coordinates
// are their free parameters, and the dependent ones are re-derived.
std::pair<FivePointCoordinates, ColumnQuintuple> from_five_points(
    const HeisenbergPoint& p1, const HeisenbergPoint& p2,
    const HeisenbergPoint& p3, const HeisenbergPoint& p4,
    const HeisenbergPoint& p5);

}  // namespace crv
