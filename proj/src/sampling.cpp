#include "crvol/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace crv {

namespace {

Complex gaussian_complex(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    return Complex(n(rng), n(rng));
}

// Signature (2,1) form in the diagonalising basis of the antidiagonal form.
Complex diag_form(const Vec3& u, const Vec3& w) {
    return std::conj(w(0)) * u(0) + std::conj(w(1)) * u(1) -
           std::conj(w(2)) * u(2);
}

// Twelve invariants all well-conditioned: away from {0,1}, moderate size,
// phase away from the real axis.
bool structure_is_tame(const CrossRatioStructure& s, double margin,
                       double max_abs, double min_sine) {
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) {
            if (i == j) continue;
            const Complex z = s.invariant(i, j);
            if (endpoint_distance(z) < margin) return false;
            if (std::abs(z) > max_abs) return false;
            if (std::fabs(std::sin(std::arg(z))) < min_sine) return false;
        }
    return true;
}

}  // namespace

HeisenbergPoint random_heisenberg_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> box(-2.0, 2.0);
    std::uniform_real_distribution<double> height(-4.0, 4.0);
    return HeisenbergPoint(Complex(box(rng), box(rng)), height(rng));
}

std::array<HeisenbergPoint, 4> random_generic_quadruple(std::mt19937_64& rng) {
    for (;;) {
        std::array<HeisenbergPoint, 4> pts = {
            random_heisenberg_point(rng), random_heisenberg_point(rng),
            random_heisenberg_point(rng), random_heisenberg_point(rng)};
        Vec3 lifts[4];
        for (int i = 0; i < 4; ++i) lifts[i] = lift(pts[std::size_t(i)]);

        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i)
            for (int j = i + 1; j < 4 && ok; ++j)
                if (std::abs(herm(lifts[i], lifts[j])) <
                    0.01 * lifts[i].norm() * lifts[j].norm())
                    ok = false;
        if (!ok) continue;

        const int triples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
        for (const auto& tr : triples) {
            const double a =
                cartan_invariant(pts[std::size_t(tr[0])], pts[std::size_t(tr[1])],
                                 pts[std::size_t(tr[2])]);
            if (std::fabs(std::cos(a)) < 0.05) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;

        try {
            const CRConfiguration cfg =
                cross_ratio_structure_of(pts[0], pts[1], pts[2], pts[3]);
            if (!structure_is_tame(cfg.structure(), 0.05, 20.0, 0.02)) continue;
        } catch (const degeneracy_error&) {
            continue;
        }
        return pts;
    }
}

std::array<HeisenbergPoint, 5> random_generic_five_points(std::mt19937_64& rng) {
    for (;;) {
        std::array<HeisenbergPoint, 5> pts = {
            random_heisenberg_point(rng), random_heisenberg_point(rng),
            random_heisenberg_point(rng), random_heisenberg_point(rng),
            random_heisenberg_point(rng)};

        bool ok = true;
        for (int i = 0; i < 5 && ok; ++i)
            for (int j = i + 1; j < 5 && ok; ++j)
                for (int k = j + 1; k < 5 && ok; ++k) {
                    try {
                        const double a = cartan_invariant(pts[std::size_t(i)],
                                                          pts[std::size_t(j)],
                                                          pts[std::size_t(k)]);
                        if (std::fabs(std::cos(a)) < 0.05) ok = false;
                    } catch (const std::domain_error&) {
                        ok = false;
                    }
                }
        if (!ok) continue;

        try {
            const auto [coords, quintuple] =
                from_five_points(pts[0], pts[1], pts[2], pts[3], pts[4]);
            if (std::abs(coords.q) < 1e-3) continue;
            const Complex values[12] = {coords.x1, coords.x2, coords.x3,
                                        coords.x4, coords.y1, coords.y2,
                                        coords.y3, coords.y4, coords.z3,
                                        coords.w3, coords.z4, coords.w4};
            for (const Complex& v : values)
                if (endpoint_distance(v) < 0.03 || std::abs(v) > 50.0) ok = false;
            for (const auto& col : quintuple.columns)
                for (const Complex& v : col.free_params())
                    if (endpoint_distance(v) < 0.03 || std::abs(v) > 50.0)
                        ok = false;
        } catch (const degeneracy_error&) {
            continue;
        }
        if (ok) return pts;
    }
}

Mat3 random_j_unitary(std::mt19937_64& rng) {
    // Orthonormalise a random basis with respect to the diagonalised form
    // (+,+,-): one timelike column, two spacelike, mutually orthogonal.
    Vec3 b3;
    for (;;) {
        b3 = Vec3(gaussian_complex(rng), gaussian_complex(rng),
                  gaussian_complex(rng));
        const double n = diag_form(b3, b3).real();
        if (n < -0.1 * b3.squaredNorm()) {
            b3 /= std::sqrt(-n);
            break;
        }
    }
    auto spacelike = [&](const Vec3* other) {
        for (;;) {
            Vec3 a(gaussian_complex(rng), gaussian_complex(rng),
                   gaussian_complex(rng));
            Vec3 v = a + diag_form(a, b3) * b3;
            if (other) v -= diag_form(a, *other) * (*other);
            const double n = diag_form(v, v).real();
            if (n > 0.1 * v.squaredNorm()) return Vec3(v / std::sqrt(n));
        }
    };
    const Vec3 b1 = spacelike(nullptr);
    const Vec3 b2 = spacelike(&b1);

    Mat3 n;
    n.col(0) = b1;
    n.col(1) = b2;
    n.col(2) = b3;

    Mat3 s = Mat3::Zero();
    const double r = 1.0 / std::sqrt(2.0);
    s(0, 0) = r;
    s(0, 2) = r;
    s(1, 1) = 1.0;
    s(2, 0) = r;
    s(2, 2) = -r;
    return s * n * s.transpose();
}

FivePointCoordinates random_five_point_coordinates(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> radius(0.2, 5.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    auto draw = [&]() {
        for (;;) {
            const Complex z = std::polar(radius(rng), angle(rng));
            if (std::abs(z - 1.0) >= 0.05) return z;
        }
    };
    for (;;) {
        try {
            const FivePointCoordinates c = derive_dependent(
                draw(), draw(), draw(), draw(), draw(), draw(), draw());
            if (std::abs(c.q) < 1e-3) continue;
            const Complex values[12] = {c.x1, c.x2, c.x3, c.x4, c.y1, c.y2,
                                        c.y3, c.y4, c.z3, c.w3, c.z4, c.w4};
            bool ok = true;
            for (const Complex& v : values)
                if (endpoint_distance(v) < 0.05 || std::abs(v) > 50.0) ok = false;
            if (!ok) continue;
            const ColumnQuintuple q = assemble_columns(c);
            for (const auto& col : q.columns)
                for (const Complex& v : col.free_params())
                    if (endpoint_distance(v) < 0.05 || std::abs(v) > 50.0)
                        ok = false;
            if (ok) return c;
        } catch (const degeneracy_error&) {
        }
    }
}

}  // namespace crv
