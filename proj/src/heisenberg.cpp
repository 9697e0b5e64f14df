#include "crvol/heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace crv {

namespace {

// A bracket below this relative size counts as vanishing.
constexpr double kBracketTol = 1e-12;
// |cos A| below this flags three points on a common C-circle.
constexpr double kCCircleTol = 1e-8;

double rel_scale(const Vec3& u, const Vec3& w) { return u.norm() * w.norm(); }

void require_distinct(const Vec3& u, const Vec3& w, const char* who) {
    if (std::abs(herm(u, w)) < kBracketTol * rel_scale(u, w))
        throw std::domain_error(std::string(who) + ": coincident points");
}

Complex checked_ratio_bracket(const Vec3& u, const Vec3& w, const char* who,
                              const char* which) {
    const Complex b = herm(u, w);
    if (std::abs(b) < kBracketTol * rel_scale(u, w))
        throw degeneracy_error(std::string(who) + ": vanishing bracket " + which);
    return b;
}

double rel_gap(Complex a, Complex b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

HeisenbergPoint::HeisenbergPoint(Complex z, double t) : z_(z), t_(t) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || !std::isfinite(t))
        throw std::domain_error("HeisenbergPoint: components must be finite");
}

Complex HeisenbergPoint::z() const {
    if (infinite_)
        throw std::domain_error("HeisenbergPoint: no z coordinate at infinity");
    return z_;
}

double HeisenbergPoint::t() const {
    if (infinite_)
        throw std::domain_error("HeisenbergPoint: no t coordinate at infinity");
    return t_;
}

Mat3 hermitian_form_matrix() {
    Mat3 j = Mat3::Zero();
    j(0, 2) = j(1, 1) = j(2, 0) = 1.0;
    return j;
}

Complex herm(const Vec3& u, const Vec3& w) {
    return std::conj(w(0)) * u(2) + std::conj(w(1)) * u(1) +
           std::conj(w(2)) * u(0);
}

Vec3 lift(const HeisenbergPoint& p) {
    if (p.is_infinity()) return Vec3(1.0, 0.0, 0.0);
    const Complex z = p.z();
    return Vec3(Complex(-std::norm(z), p.t()) / 2.0, z, Complex(1.0, 0.0));
}

double cartan_invariant(const HeisenbergPoint& p1, const HeisenbergPoint& p2,
                        const HeisenbergPoint& p3) {
    const Vec3 u1 = lift(p1), u2 = lift(p2), u3 = lift(p3);
    require_distinct(u1, u2, "cartan_invariant");
    require_distinct(u2, u3, "cartan_invariant");
    require_distinct(u3, u1, "cartan_invariant");
    return std::arg(-herm(u1, u2) * herm(u2, u3) * herm(u3, u1));
}

Complex kr_cross_ratio(const HeisenbergPoint& p1, const HeisenbergPoint& p2,
                       const HeisenbergPoint& p3, const HeisenbergPoint& p4) {
    const Vec3 u1 = lift(p1), u2 = lift(p2), u3 = lift(p3), u4 = lift(p4);
    const Complex d1 =
        checked_ratio_bracket(u3, u2, "kr_cross_ratio", "<p3,p2>");
    const Complex d2 =
        checked_ratio_bracket(u4, u1, "kr_cross_ratio", "<p4,p1>");
    return herm(u4, u2) * herm(u3, u1) / (d1 * d2);
}

Vec3 polar_vector(const Vec3& u, const Vec3& w) {
    // Bilinear cross product, written out because Eigen's cross() conjugates
    // complex operands.
    const Vec3 x(u(1) * w(2) - u(2) * w(1), u(2) * w(0) - u(0) * w(2),
                 u(0) * w(1) - u(1) * w(0));
    if (x.norm() < kBracketTol * rel_scale(u, w))
        throw std::domain_error("polar_vector: proportional inputs");
    return Vec3(std::conj(x(2)), std::conj(x(1)), std::conj(x(0)));
}

Complex cp1_cross_ratio(const ExtendedComplex& t1, const ExtendedComplex& t2,
                        const ExtendedComplex& t3, const ExtendedComplex& t4) {
    const ExtendedComplex pts[4] = {t1, t2, t3, t4};
    int infinite = 0;
    for (const auto& p : pts) infinite += p.is_infinity() ? 1 : 0;
    if (infinite > 1)
        throw std::domain_error(
            "cp1_cross_ratio: at most one point may be infinite");
    // A factor (a - b) involving the infinite point cancels against its twin;
    // represent both by 1.
    auto factor = [](const ExtendedComplex& a, const ExtendedComplex& b) {
        if (a.is_infinity() || b.is_infinity()) return Complex(1.0, 0.0);
        return a.value() - b.value();
    };
    const Complex num = factor(t4, t2) * factor(t3, t1);
    const Complex den = factor(t3, t2) * factor(t4, t1);
    if (std::abs(den) == 0.0)
        throw degeneracy_error("cp1_cross_ratio: coincident points");
    return num / den;
}

Complex polar_cross_ratio(const HeisenbergPoint& p1, const HeisenbergPoint& p2,
                          const HeisenbergPoint& p3, const HeisenbergPoint& p4) {
    const Vec3 u1 = lift(p1), u2 = lift(p2), u3 = lift(p3), u4 = lift(p4);
    const Vec3 c12 = polar_vector(u1, u2);
    const Complex d1 =
        checked_ratio_bracket(u3, c12, "polar_cross_ratio", "<p3,c12>");
    const Complex d2 =
        checked_ratio_bracket(u4, u1, "polar_cross_ratio", "<p4,p1>");
    return herm(u4, c12) * herm(u3, u1) / (d1 * d2);
}

Complex polar_cross_ratio_via_kr(const HeisenbergPoint& p1,
                                 const HeisenbergPoint& p2,
                                 const HeisenbergPoint& p3,
                                 const HeisenbergPoint& p4) {
    const Complex num = kr_cross_ratio(p1, p2, p3, p4) *
                            kr_cross_ratio(p1, p3, p4, p2) *
                            kr_cross_ratio(p2, p3, p1, p4) +
                        1.0;
    const Complex den = 1.0 + kr_cross_ratio(p1, p4, p2, p3) *
                                  (kr_cross_ratio(p4, p2, p1, p3) - 1.0);
    if (std::abs(den) < 1e-14)
        throw degeneracy_error("polar_cross_ratio_via_kr: vanishing denominator");
    return num / den;
}

CRConfiguration cross_ratio_structure_of(const HeisenbergPoint& p1,
                                         const HeisenbergPoint& p2,
                                         const HeisenbergPoint& p3,
                                         const HeisenbergPoint& p4) {
    const std::array<HeisenbergPoint, 4> pts{p1, p2, p3, p4};
    const Vec3 lifts[4] = {lift(p1), lift(p2), lift(p3), lift(p4)};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (std::abs(herm(lifts[i], lifts[j])) <
                kBracketTol * rel_scale(lifts[i], lifts[j]))
                throw degeneracy_error(
                    "cross_ratio_structure_of: coincident points p" +
                    std::to_string(i + 1) + ", p" + std::to_string(j + 1));
    // Genericity: no three points on a common C-circle (angular invariant at
    // +-pi/2).
    const int triples[4][3] = {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}};
    for (const auto& tr : triples) {
        const double a = cartan_invariant(pts[std::size_t(tr[0] - 1)],
                                          pts[std::size_t(tr[1] - 1)],
                                          pts[std::size_t(tr[2] - 1)]);
        if (std::abs(std::cos(a)) < kCCircleTol)
            throw degeneracy_error(
                "cross_ratio_structure_of: points p" + std::to_string(tr[0]) +
                ", p" + std::to_string(tr[1]) + ", p" + std::to_string(tr[2]) +
                " lie on a C-circle");
    }

    CrossRatioStructure s = [&] {
        try {
            return from_free_params(polar_cross_ratio(p1, p2, p3, p4),
                                    polar_cross_ratio(p2, p1, p4, p3),
                                    polar_cross_ratio(p3, p4, p1, p2),
                                    polar_cross_ratio(p4, p3, p2, p1));
        } catch (const std::domain_error& e) {
            // An invariant at 0 or 1 is itself a geometric degeneracy (the
            // fourth point meets a complex line through two others).
            throw degeneracy_error(std::string("cross_ratio_structure_of: ") +
                                   e.what());
        }
    }();

    double residual = 0.0;
    const int pairs[3][4] = {{1, 2, 3, 4}, {1, 3, 2, 4}, {1, 4, 2, 3}};
    for (const auto& q : pairs) {
        const Complex lhs = s.invariant(q[0], q[1]) * s.invariant(q[1], q[0]);
        const Complex rhs = s.invariant(q[2], q[3]) * s.invariant(q[3], q[2]);
        residual = std::max(residual, rel_gap(lhs, std::conj(rhs)));
    }
    return CRConfiguration(pts, s, residual);
}

double face_cochain(const HeisenbergPoint& p1, const HeisenbergPoint& p2,
                    const HeisenbergPoint& p3) {
    const double a = cartan_invariant(p1, p2, p3);
    return 0.5 * bloch_wigner(-std::polar(1.0, 2.0 * a)).value;
}

double coboundary_defect(const HeisenbergPoint& p1, const HeisenbergPoint& p2,
                         const HeisenbergPoint& p3, const HeisenbergPoint& p4) {
    const CRConfiguration cfg = cross_ratio_structure_of(p1, p2, p3, p4);
    const double boundary = face_cochain(p2, p3, p4) - face_cochain(p1, p3, p4) +
                            face_cochain(p1, p2, p4) - face_cochain(p1, p2, p3);
    return std::abs(boundary - volume(cfg.structure()));
}

AngleDecomposition angle_decomposition(const CrossRatioStructure& s) {
    AngleDecomposition d;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) {
            if (i == j) continue;
            const Complex z = s.invariant(i, j);
            d.theta[std::size_t(i)][std::size_t(j)] = std::arg(z);
            d.r[std::size_t(i)][std::size_t(j)] = std::abs(z);
        }

    for (int i = 1; i <= 4; ++i) {
        double sum = 0.0;
        for (int j = 1; j <= 4; ++j)
            if (j != i) sum += d.theta[std::size_t(i)][std::size_t(j)];
        const double rr = std::remainder(sum, 2.0 * kPi);
        d.vertex_sum_residual = std::max(
            d.vertex_sum_residual, std::min(std::fabs(rr - kPi), std::fabs(rr + kPi)));
    }

    const int pairs[3][4] = {{1, 2, 3, 4}, {1, 3, 2, 4}, {1, 4, 2, 3}};
    for (const auto& q : pairs) {
        const auto th = [&d](int a, int b) {
            return d.theta[std::size_t(a)][std::size_t(b)];
        };
        const auto rr = [&d](int a, int b) {
            return d.r[std::size_t(a)][std::size_t(b)];
        };
        const double angle_sum =
            th(q[0], q[1]) + th(q[1], q[0]) + th(q[2], q[3]) + th(q[3], q[2]);
        d.pair_angle_residual = std::max(
            d.pair_angle_residual, std::fabs(std::remainder(angle_sum, 2.0 * kPi)));
        const double lhs = rr(q[0], q[1]) * rr(q[1], q[0]);
        const double rhs = rr(q[2], q[3]) * rr(q[3], q[2]);
        d.pair_modulus_residual =
            std::max(d.pair_modulus_residual,
                     std::fabs(lhs - rhs) / std::max({1.0, lhs, rhs}));
    }

    const auto sn = [&d](int a, int b) {
        return std::sin(d.theta[std::size_t(a)][std::size_t(b)]);
    };
    const double eq1_lhs = (sn(1, 3) / sn(1, 4)) * (sn(2, 4) / sn(2, 3));
    const double eq1_rhs = (sn(3, 1) / sn(3, 2)) * (sn(4, 2) / sn(4, 1));
    const double eq2_lhs = (sn(1, 4) / sn(1, 2)) * (sn(3, 2) / sn(3, 4));
    const double eq2_rhs = (sn(2, 3) / sn(2, 1)) * (sn(4, 1) / sn(4, 3));
    d.sine_residual = std::max(
        std::fabs(eq1_lhs - eq1_rhs) /
            std::max({1.0, std::fabs(eq1_lhs), std::fabs(eq1_rhs)}),
        std::fabs(eq2_lhs - eq2_rhs) /
            std::max({1.0, std::fabs(eq2_lhs), std::fabs(eq2_rhs)}));
    return d;
}

HeisenbergPoint apply_matrix(const Mat3& m, const HeisenbergPoint& p) {
    const Vec3 v = m * lift(p);
    if (std::abs(v(2)) <= 1e-13 * v.norm()) return HeisenbergPoint::infinity();
    const Complex z = v(1) / v(2);
    const double t = 2.0 * (v(0) / v(2)).imag();
    return HeisenbergPoint(z, t);
}

StandardFraming normalize_to_standard(const HeisenbergPoint& p1,
                                      const HeisenbergPoint& p2,
                                      const HeisenbergPoint& p3) {
    const Vec3 u1 = lift(p1), u2 = lift(p2), u3 = lift(p3);
    require_distinct(u1, u2, "normalize_to_standard");
    require_distinct(u2, u3, "normalize_to_standard");
    require_distinct(u3, u1, "normalize_to_standard");
    const double a = cartan_invariant(p1, p2, p3);
    if (std::abs(std::cos(a)) < kCCircleTol)
        throw degeneracy_error(
            "normalize_to_standard: points lie on a C-circle");

    // J-orthogonal frame sending the standard basis directions to
    // (u1, polar, u2); its columns have the same Gram matrix as the standard
    // frame, so the matrix preserves the form exactly in exact arithmetic.
    const Vec3 c = polar_vector(u1, u2);
    const double cc = herm(c, c).real();
    if (cc <= 0.0)
        throw degeneracy_error("normalize_to_standard: polar vector not spacelike");
    Mat3 frame;
    frame.col(0) = u1;
    frame.col(1) = c / std::sqrt(cc);
    frame.col(2) = u2 / std::conj(herm(u1, u2));
    // Inverse of a form-preserving matrix: J M* J.
    const Mat3 j = hermitian_form_matrix();
    const Mat3 u = j * frame.adjoint() * j;

    // After u, p1 is at infinity and p2 at the origin; a dilation-rotation
    // fixing both moves the image of p3 onto (1, s3).
    const Vec3 v3 = u * u3;
    if (std::abs(v3(2)) <= 1e-13 * v3.norm())
        throw degeneracy_error(
            "normalize_to_standard: third point collides with the first");
    const Complex zp = v3(1) / v3(2);
    if (std::abs(zp) < 1e-10)
        throw degeneracy_error(
            "normalize_to_standard: third point on the C-circle through the "
            "first two");
    const Complex mu = 1.0 / zp;
    const double am = std::abs(mu);
    Mat3 dil = Mat3::Zero();
    dil(0, 0) = am;
    dil(1, 1) = mu / am;
    dil(2, 2) = 1.0 / am;

    const Mat3 w = dil * u;
    StandardFraming out{
        w,
        0.0,
        {apply_matrix(w, p1), apply_matrix(w, p2), apply_matrix(w, p3)}};
    out.s3 = out.images[2].t();
    return out;
}

}  // namespace crv
