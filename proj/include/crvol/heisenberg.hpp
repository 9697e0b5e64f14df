#pragma once

#include <Eigen/Dense>
#include <array>

#include "crvol/cross_ratio.hpp"
#include "crvol/types.hpp"

namespace crv {

using Vec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3cd;

// Point of the one-point compactification of the Heisenberg group
// (the boundary sphere S^3 in horospherical coordinates): either a finite
// pair (z, t) in C x R or the point at infinity.
class HeisenbergPoint {
public:
    HeisenbergPoint(Complex z, double t);
    static HeisenbergPoint infinity() { return HeisenbergPoint(); }

    bool is_infinity() const { return infinite_; }
    Complex z() const;
    double t() const;

private:
    HeisenbergPoint() : infinite_(true) {}
    bool infinite_ = false;
    Complex z_{0.0, 0.0};
    double t_ = 0.0;
};

// Antidiagonal Hermitian form of signature (2,1) used throughout.
Mat3 hermitian_form_matrix();

// <u, w> = w* J u = conj(w0) u2 + conj(w1) u1 + conj(w2) u0;
// linear in u, conjugate-linear in w.
Complex herm(const Vec3& u, const Vec3& w);

// Null lift to C^{2,1}: (z, t) -> [(-|z|^2 + i t)/2, z, 1]; infinity -> [1,0,0].
Vec3 lift(const HeisenbergPoint& p);

// Angular invariant of an ordered triple:
//     arg(-<u1,u2><u2,u3><u3,u1>) in [-pi/2, pi/2];
// 0 on triples lying on an R-circle, +-pi/2 on C-circles; independent of the
// lift scalings; negated by swapping two arguments.
double cartan_invariant(const HeisenbergPoint& p1, const HeisenbergPoint& p2,
                        const HeisenbergPoint& p3);

// Hermitian cross-ratio of an ordered quadruple:
//     <u4,u2><u3,u1> / (<u3,u2><u4,u1>).
Complex kr_cross_ratio(const HeisenbergPoint& p1, const HeisenbergPoint& p2,
                       const HeisenbergPoint& p3, const HeisenbergPoint& p4);

// Vector J-orthogonal to the complex plane spanned by u and w, computed as
// J * conj(u x w); determined up to scale. Throws on proportional inputs.
Vec3 polar_vector(const Vec3& u, const Vec3& w);

// Cross-ratio on CP^1 with the convention
//     X(t1,t2,t3,t4) = (t4-t2)(t3-t1) / ((t3-t2)(t4-t1)),
// the unique one with X(infinity, 0, 1, w) = w. At most one argument may be
// infinite.
Complex cp1_cross_ratio(const ExtendedComplex& t1, const ExtendedComplex& t2,
                        const ExtendedComplex& t3, const ExtendedComplex& t4);

// Invariant attached to the first vertex of an ordered quadruple: the CP^1
// cross-ratio of the projections of p2, p3, p4 (and of the tangent complex
// line) through p1, evaluated in brackets via the polar vector c12 of the
// complex line through p1, p2:
//     <u4,c12><u3,u1> / (<u3,c12><u4,u1>).
// Normalised so that (infinity, (0,0), (1,s3), (w,s4)) -> w.
Complex polar_cross_ratio(const HeisenbergPoint& p1, const HeisenbergPoint& p2,
                          const HeisenbergPoint& p3, const HeisenbergPoint& p4);

// The same invariant assembled from five Hermitian cross-ratios,
//     (KR(1234) KR(1342) KR(2314) + 1) / (1 + KR(1423) (KR(4213) - 1)),
// kept as an independent cross-check of polar_cross_ratio.
Complex polar_cross_ratio_via_kr(const HeisenbergPoint& p1,
                                 const HeisenbergPoint& p2,
                                 const HeisenbergPoint& p3,
                                 const HeisenbergPoint& p4);

// A generic ordered quadruple on S^3 together with its cross-ratio structure
// (the twelve vertex invariants read off via polar_cross_ratio).
class CRConfiguration {
public:
    const std::array<HeisenbergPoint, 4>& points() const { return pts_; }
    const CrossRatioStructure& structure() const { return s_; }

    // Worst normalised residual of the three constraint equations
    // z_ij z_ji = conj(z_kl z_lk) tying opposite edges together.
    double cr_equation_residual() const { return residual_; }

    friend CRConfiguration cross_ratio_structure_of(const HeisenbergPoint& p1,
                                                    const HeisenbergPoint& p2,
                                                    const HeisenbergPoint& p3,
                                                    const HeisenbergPoint& p4);

private:
    CRConfiguration(std::array<HeisenbergPoint, 4> pts, CrossRatioStructure s,
                    double residual)
        : pts_(std::move(pts)), s_(std::move(s)), residual_(residual) {}
    std::array<HeisenbergPoint, 4> pts_;
    CrossRatioStructure s_;
    double residual_;
};

// Builds the cross-ratio structure of four pairwise distinct points, refusing
// configurations with three points on a common C-circle.
CRConfiguration cross_ratio_structure_of(const HeisenbergPoint& p1,
                                         const HeisenbergPoint& p2,
                                         const HeisenbergPoint& p3,
                                         const HeisenbergPoint& p4);

// Face weight of an ordered triple: half the single-valued dilogarithm of
// minus the squared angular-invariant phase,
//     (1/2) D(-e^{2iA(p1,p2,p3)}).
double face_cochain(const HeisenbergPoint& p1, const HeisenbergPoint& p2,
                    const HeisenbergPoint& p3);

// | sum of signed face weights over the boundary of (p1,p2,p3,p4) minus the
// volume of its cross-ratio structure |. The faces take signs (+,-,+,-)
// indexed by the omitted vertex.
double coboundary_defect(const HeisenbergPoint& p1, const HeisenbergPoint& p2,
                         const HeisenbergPoint& p3, const HeisenbergPoint& p4);

// Polar decomposition z_ij = r_ij e^{i theta_ij} of all twelve invariants,
// with the residuals of the equations satisfied on geometric structures.
struct AngleDecomposition {
    // 1-based [i][j]; diagonal unused.
    std::array<std::array<double, 5>, 5> theta{};
    std::array<std::array<double, 5>, 5> r{};
    // Worst residual of sum_j theta_ij = +-pi over the four vertices.
    double vertex_sum_residual = 0.0;
    // Worst residual of theta_ij + theta_ji + theta_kl + theta_lk = 0 (mod 2pi).
    double pair_angle_residual = 0.0;
    // Worst normalised residual of r_ij r_ji = r_kl r_lk.
    double pair_modulus_residual = 0.0;
    // Worst normalised residual of the two independent sine identities.
    double sine_residual = 0.0;
};
AngleDecomposition angle_decomposition(const CrossRatioStructure& s);

// A transformation preserving the Hermitian form that carries an ordered
// generic triple to the standard position (infinity, (0,0), (1, s3)).
struct StandardFraming {
    Mat3 matrix;
    double s3;
    std::array<HeisenbergPoint, 3> images;
};
StandardFraming normalize_to_standard(const HeisenbergPoint& p1,
                                      const HeisenbergPoint& p2,
                                      const HeisenbergPoint& p3);

// Action of a form-preserving matrix on a boundary point through its lift.
HeisenbergPoint apply_matrix(const Mat3& m, const HeisenbergPoint& p);

}  // namespace crv
