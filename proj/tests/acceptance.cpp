// Acceptance gate: ten numbered end-to-end checks, one line each, exit code
// equal to the number of failures. Tolerances are pinned here on purpose.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <random>
#include <string>

#include "crvol/cross_ratio.hpp"
#include "crvol/dilog.hpp"
#include "crvol/heisenberg.hpp"
#include "crvol/pentad.hpp"
#include "crvol/sampling.hpp"
#include "crvol/triangulation.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"
#include "support/variety.hpp"

namespace {

using namespace crv;

int failures = 0;

void report(int index, const char* what, bool pass, double worst) {
    std::printf("%s criterion %2d: %s (worst = %.3e)\n",
                pass ? "PASS" : "FAIL", index, what, worst);
    if (!pass) ++failures;
}

// 1. Anchor values of the dilogarithm, cross-checked against the slow
//    in-file series oracles.
void criterion_1() {
    const double at_i = bloch_wigner(Complex(0.0, 1.0)).value;
    const double at_root = bloch_wigner(std::polar(1.0, kPi / 3.0)).value;
    double worst = std::max(std::abs(at_i - 0.915965594177219),
                            std::abs(at_root - 1.014941606409653));
    worst = std::max(worst, std::abs(at_i - oracle::bloch_wigner_at_i()));
    worst = std::max(
        worst, std::abs(at_root - oracle::bloch_wigner_at_sixth_root()));
    report(1, "dilogarithm anchors vs series oracle", worst <= 1e-12, worst);
}

// 2. The five-term functional equation of the dilogarithm.
void criterion_2() {
    testsupport::Rng rng(1001);
    double worst = 0.0;
    int done = 0;
    while (done < 1000) {
        try {
            worst = std::max(worst,
                             five_term_defect(rng.generic(), rng.generic()));
            ++done;
        } catch (const std::domain_error&) {
        }
    }
    report(2, "five-term defect over 1000 parameter pairs", worst <= 1e-11,
           worst);
}

// 3. The alternating volume sum of a five-point configuration vanishes,
//    for formal coordinates and for measured boundary configurations.
void criterion_3() {
    testsupport::Rng rng(1002);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k)
        worst = std::max(worst, five_term_volume_defect(
                                    random_five_point_coordinates(rng.engine())));
    int done = 0;
    while (done < 100) {
        const auto p = random_generic_five_points(rng.engine());
        try {
            const auto [c, q] = from_five_points(p[0], p[1], p[2], p[3], p[4]);
            worst = std::max(worst, five_term_volume_defect(c));
            ++done;
        } catch (const degeneracy_error&) {
        }
    }
    report(3, "five-term volume defect, 1000 formal + 100 measured",
           worst <= 1e-9, worst);
}

// 4. On the two-parameter branch the volume is a single dilogarithm value.
void criterion_4() {
    testsupport::Rng rng(1003);
    double worst = 0.0;
    int done = 0;
    while (done < 500) {
        const Complex z12 = rng.generic(), z21 = rng.generic();
        try {
            const double direct = bloch_wigner(z12 * z21).value;
            const double via = volume(hyperbolic_lift(z12, z21));
            worst = std::max(worst, std::abs(direct - via));
            ++done;
        } catch (const std::domain_error&) {
        }
    }
    report(4, "two-parameter branch volume identity, 500 samples",
           worst <= 1e-11, worst);
}

// 5. Structures measured from boundary quadruples satisfy the variety
//    equations and their polar (angle/modulus) forms.
void criterion_5() {
    std::mt19937_64 engine(1004);
    double worst_eq = 0.0, worst_polar = 0.0;
    for (int k = 0; k < 500; ++k) {
        const auto p = random_generic_quadruple(engine);
        const CRConfiguration c =
            cross_ratio_structure_of(p[0], p[1], p[2], p[3]);
        worst_eq = std::max(worst_eq, c.cr_equation_residual());
        const AngleDecomposition d = angle_decomposition(c.structure());
        worst_polar = std::max({worst_polar, d.pair_angle_residual,
                                d.pair_modulus_residual, d.sine_residual});
    }
    report(5, "measured structures satisfy the variety equations",
           worst_eq <= 1e-9 && worst_polar <= 1e-8,
           std::max(worst_eq, worst_polar));
}

// 6. The volume is a coboundary on measured configurations.
void criterion_6() {
    std::mt19937_64 engine(1005);
    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
        const auto p = random_generic_quadruple(engine);
        worst = std::max(worst,
                         std::abs(coboundary_defect(p[0], p[1], p[2], p[3])));
    }
    report(6, "volume coboundary identity, 500 quadruples", worst <= 1e-9,
           worst);
}

// 7. The bracket cross-ratio triple product carries the angular invariant,
//    which the structure table reproduces as a monomial.
void criterion_7() {
    std::mt19937_64 engine(1006);
    double worst_triple = 0.0, worst_monomial = 0.0;
    for (int k = 0; k < 500; ++k) {
        const auto p = random_generic_quadruple(engine);
        const auto kr = [&p](int a, int b, int c, int d) {
            return kr_cross_ratio(p[std::size_t(a - 1)], p[std::size_t(b - 1)],
                                  p[std::size_t(c - 1)],
                                  p[std::size_t(d - 1)]);
        };
        const Complex phase =
            std::polar(1.0, 2.0 * cartan_invariant(p[1], p[2], p[3]));
        const Complex triple =
            kr(1, 2, 3, 4) * kr(1, 4, 2, 3) * kr(1, 3, 4, 2);
        worst_triple = std::max(worst_triple, std::abs(triple - phase));

        const CrossRatioStructure s =
            cross_ratio_structure_of(p[0], p[1], p[2], p[3]).structure();
        const Complex monomial =
            -s.invariant(2, 1) * s.invariant(4, 1) * s.invariant(3, 1);
        worst_monomial = std::max(worst_monomial, std::abs(monomial - phase));
    }
    report(7, "angular invariant from bracket products and the table",
           worst_triple <= 1e-10 && worst_monomial <= 1e-9,
           std::max(worst_triple, worst_monomial));
}

// 8. Local dimensions: the edge relations leave 10 directions, edge plus
//    face relations leave 7, measured as numeric Jacobian nullities.
void criterion_8() {
    testsupport::Rng rng(1007);
    bool pass = true;
    int done = 0;
    while (done < 20) {
        try {
            const ColumnQuintuple q = prop1_assemble(
                rng.generic(2.0, 5e-2), rng.generic(2.0, 5e-2),
                rng.generic(2.0, 5e-2), rng.generic(2.0, 5e-2),
                rng.generic(2.0, 5e-2), rng.generic(2.0, 5e-2),
                rng.generic(2.0, 5e-2), rng.generic(2.0, 5e-2),
                rng.generic(2.0, 5e-2), rng.generic(2.0, 5e-2));
            pass = pass && testsupport::edge_variety_nullity(q) == 10;
            ++done;
        } catch (const degeneracy_error&) {
        }
    }
    done = 0;
    while (done < 20) {
        try {
            const ColumnQuintuple q = assemble_columns(derive_dependent(
                rng.generic(3.0, 5e-2), rng.generic(3.0, 5e-2),
                rng.generic(3.0, 5e-2), rng.generic(3.0, 5e-2),
                rng.generic(3.0, 5e-2), rng.generic(3.0, 5e-2),
                rng.generic(3.0, 5e-2)));
            pass = pass && testsupport::full_variety_nullity(q) == 7;
            ++done;
        } catch (const degeneracy_error&) {
        }
    }
    report(8, "Jacobian nullities 10 (edge) and 7 (edge+face), 20 points each",
           pass, pass ? 0.0 : 1.0);
}

// 9. The 2-3 move preserves the total volume, and 2-3 followed by 3-2
//    restores the original invariants.
void criterion_9() {
    testsupport::Rng rng(1008);
    double worst_vol = 0.0, worst_roundtrip = 0.0;

    int done = 0;
    while (done < 100) {
        const auto p = random_generic_five_points(rng.engine());
        try {
            const std::map<std::string, HeisenbergPoint> pos = {
                {"1", p[0]}, {"2", p[1]}, {"3", p[2]}, {"4", p[3]},
                {"5", p[4]}};
            const Triangulation tri({{"T1", {"1", "2", "3", "4"}, 1},
                                     {"T2", {"1", "2", "3", "5"}, -1}});
            const CrossRatioAssignment assign = geometric_assignment(tri, pos);
            const double before = total_volume(tri, assign);
            const PachnerResult moved = pachner_23(tri, assign, {"1", "2", "3"});
            const double after =
                total_volume(moved.triangulation, moved.assignment);
            worst_vol = std::max(worst_vol, std::abs(before - after));
            ++done;
        } catch (const degeneracy_error&) {
        }
    }

    done = 0;
    while (done < 100) {
        try {
            const ColumnQuintuple q =
                assemble_columns(random_five_point_coordinates(rng.engine()));
            const Triangulation tri({{"P", {"1", "2", "3", "4"}, 1},
                                     {"Q", {"1", "2", "3", "5"}, -1}});
            const CrossRatioAssignment assign = {q.columns[0], q.columns[1]};
            const double before = total_volume(tri, assign);
            const PachnerResult mid = pachner_23(tri, assign, {"1", "2", "3"});
            worst_vol = std::max(
                worst_vol,
                std::abs(before -
                         total_volume(mid.triangulation, mid.assignment)));
            const PachnerResult back =
                pachner_32(mid.triangulation, mid.assignment, "4", "5");
            worst_vol = std::max(
                worst_vol,
                std::abs(before -
                         total_volume(back.triangulation, back.assignment)));
            for (const auto& tet : back.triangulation.tetrahedra()) {
                const std::size_t k =
                    std::size_t(back.triangulation.tet_index(tet.id));
                const CrossRatioStructure& original =
                    tet.vertices[3] == "4" ? q.columns[0] : q.columns[1];
                for (int i = 1; i <= 4; ++i)
                    for (int j = 1; j <= 4; ++j) {
                        if (i == j) continue;
                        worst_roundtrip = std::max(
                            worst_roundtrip,
                            std::abs(back.assignment[k].invariant(i, j) -
                                     original.invariant(i, j)));
                    }
            }
            ++done;
        } catch (const degeneracy_error&) {
        }
    }
    report(9, "2-3 move volume invariance and 2-3/3-2 round-trip",
           worst_vol <= 1e-9 && worst_roundtrip <= 1e-10,
           std::max(worst_vol, worst_roundtrip));
}

// 10. Invariants are unchanged under form-preserving transformations.
void criterion_10() {
    std::mt19937_64 engine(1009);
    double worst = 0.0;
    int done = 0;
    while (done < 100) {
        const auto p = random_generic_quadruple(engine);
        const Mat3 m = random_j_unitary(engine);
        std::array<HeisenbergPoint, 4> q = {
            HeisenbergPoint::infinity(), HeisenbergPoint::infinity(),
            HeisenbergPoint::infinity(), HeisenbergPoint::infinity()};
        bool usable = true;
        for (int k = 0; k < 4; ++k) {
            q[std::size_t(k)] = apply_matrix(m, p[std::size_t(k)]);
            const auto& img = q[std::size_t(k)];
            if (img.is_infinity()) continue;
            if (std::abs(img.z()) > 1e3 || std::abs(img.t()) > 1e6)
                usable = false;
        }
        if (!usable) continue;
        try {
            const CrossRatioStructure before =
                cross_ratio_structure_of(p[0], p[1], p[2], p[3]).structure();
            const CrossRatioStructure after =
                cross_ratio_structure_of(q[0], q[1], q[2], q[3]).structure();
            for (int i = 1; i <= 4; ++i)
                for (int j = 1; j <= 4; ++j) {
                    if (i == j) continue;
                    worst = std::max(worst,
                                     std::abs(after.invariant(i, j) -
                                              before.invariant(i, j)));
                }
            ++done;
        } catch (const degeneracy_error&) {
        }
    }
    report(10, "invariance under 100 form-preserving transformations",
           worst <= 1e-9, worst);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures == 0)
        std::printf("all 10 acceptance criteria hold\n");
    else
        std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
