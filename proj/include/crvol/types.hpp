#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace crv {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// A configuration is close enough to a degenerate locus that evaluation is
// refused rather than producing meaningless numbers.
struct degeneracy_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed combinatorial data: bad labels, unmatched or over-matched faces,
// non-cyclic edge stars and the like.
struct structural_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Point of the Riemann sphere: a finite complex number or the point at
// infinity. Construction from a non-finite component is rejected.
class ExtendedComplex {
public:
    ExtendedComplex() = default;
    ExtendedComplex(Complex v) : v_(check_finite(v)) {}
    ExtendedComplex(double re, double im = 0.0) : ExtendedComplex(Complex(re, im)) {}

    static ExtendedComplex infinity() {
        ExtendedComplex e;
        e.inf_ = true;
        return e;
    }

    bool is_infinity() const { return inf_; }

    Complex value() const {
        if (inf_) throw std::domain_error("ExtendedComplex: value() called on infinity");
        return v_;
    }

    friend bool operator==(const ExtendedComplex& a, const ExtendedComplex& b) {
        if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
        return a.v_ == b.v_;
    }

private:
    static Complex check_finite(Complex v) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::domain_error("ExtendedComplex: non-finite component");
        return v;
    }

    Complex v_{0.0, 0.0};
    bool inf_ = false;
};

// Distance from z to the nearest element of {0, 1}.
inline double endpoint_distance(Complex z) {
    return std::min(std::abs(z), std::abs(z - 1.0));
}

}  // namespace crv
