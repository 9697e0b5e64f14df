#include "crvol/dilog.hpp"

#include <array>
#include <cmath>

namespace crv {
namespace {

constexpr double kPiSq6 = kPi * kPi / 6.0;
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Li2Acc {
    Complex value;
    double trunc;  // bound on the series truncation error
};

// sum_{n>=1} z^n / n^2, used for |z| <= 0.5 where it converges geometrically.
Li2Acc li2_power_series(Complex z) {
    Complex sum = z;
    Complex pw = z;
    const double r = std::abs(z);
    int n = 2;
    for (; n <= 120; ++n) {
        pw *= z;
        const Complex term = pw / double(n * n);
        sum += term;
        if (std::abs(term) < 0.25 * kEps * std::abs(sum)) break;
    }
    const double tail =
        std::pow(r, n + 1) / (double(n + 1) * double(n + 1) * (1.0 - r));
    return {sum, tail};
}

// Coefficients B_{2n} / (2n+1)! of the expansion
//     Li2(z) = u - u^2/4 + sum_{n>=1} c_n u^{2n+1},   u = -log(1-z),
// convergent for |u| < 2*pi. After the reductions below |u| <= 1.45, so each
// pair of retained terms gains a factor ~(|u|/2pi)^2 < 0.054.
constexpr std::array<double, 12> kLogCoef = {
    1.0 / 36.0,
    -1.0 / 3600.0,
    1.0 / 211680.0,
    -1.0 / 10886400.0,
    1.0 / 526901760.0,
    -4.0647616451442255e-11,
    8.9216910204564525e-13,
    -1.9939295860721076e-14,
    4.5189800296199182e-16,
    -1.0356517612181247e-17,
    2.3952186210262937e-19,
    -5.5817858743250093e-21,
};

// Valid on |z| <= 1.25, Re z <= 1/2 (so |1 - z| >= 1/2 and the log is tame).
Li2Acc li2_log_series(Complex z) {
    const Complex u = -std::log(1.0 - z);
    const Complex u2 = u * u;
    Complex sum = u - 0.25 * u2;
    Complex upow = u * u2;
    double trunc = 0.0;
    const double ratio = std::norm(u) / (4.0 * kPi * kPi);
    for (double c : kLogCoef) {
        const Complex term = c * upow;
        sum += term;
        trunc = 2.0 * std::abs(term) * ratio;
        if (std::abs(term) < 0.25 * kEps * std::abs(sum)) break;
        upow *= u2;
    }
    return {sum, trunc};
}

// Principal-branch Li2 for non-real z, reduced into the series domains by the
// inversion and reflection functional equations. Inversion only fires well
// outside the unit circle: with a cutoff at |z| = 1, rounding can leave both
// |z| and |1/z| marginally above 1 and the recursion never terminates. The
// annulus it leaves behind is covered by the log series.
Li2Acc li2_principal(Complex z) {
    if (std::norm(z) > 1.5625) {  // |z| > 1.25
        const Li2Acc inner = li2_principal(1.0 / z);
        const Complex lz = std::log(-z);
        return {-inner.value - kPiSq6 - 0.5 * lz * lz, inner.trunc};
    }
    if (z.real() > 0.5) {
        const Li2Acc inner = li2_principal(1.0 - z);
        return {kPiSq6 - std::log(z) * std::log(1.0 - z) - inner.value,
                inner.trunc};
    }
    if (std::norm(z) <= 0.25) return li2_power_series(z);
    return li2_log_series(z);
}

void reject_endpoint(Complex v, const char* name) {
    if (endpoint_distance(v) <= 1e-14) {
        throw std::domain_error(std::string("five_term_defect: argument ") +
                                name + " lies at 0 or 1");
    }
}

}  // namespace

DilogResult bloch_wigner(const ExtendedComplex& z) {
    if (z.is_infinity()) return {0.0, 0.0};
    const Complex v = z.value();
    // Conjugation antisymmetry forces D = 0 on the whole real line.
    if (v.imag() == 0.0) return {0.0, 0.0};
    const double d = endpoint_distance(v);
    if (d <= 1e-14) {
        // |D| = O(d log d) near the zeros at 0 and 1.
        const double err = 3.0 * d * (1.0 + std::fabs(std::log(d)));
        return {0.0, err};
    }
    const Li2Acc li = li2_principal(v);
    const double corr = std::log(std::abs(v)) * std::arg(1.0 - v);
    const double value = li.value.imag() + corr;
    const double scale = 1.0 + std::fabs(li.value.imag()) + std::fabs(corr);
    return {value, li.trunc + 10.0 * kEps * scale};
}

DilogResult lobachevsky(double theta) {
    if (!std::isfinite(theta))
        throw std::domain_error("lobachevsky: theta must be finite");
    // Reduce mod pi first: the function is pi-periodic and the reduced angle
    // keeps e^{2 i theta} accurate for large arguments.
    const double r = std::remainder(theta, kPi);
    const DilogResult d =
        bloch_wigner(Complex(std::cos(2.0 * r), std::sin(2.0 * r)));
    return {0.5 * d.value, 0.5 * d.estimated_error + 2.0 * kEps};
}

double five_term_defect(Complex x, Complex y) {
    reject_endpoint(x, "x");
    reject_endpoint(y, "y");
    const Complex t3 = y / x;
    const Complex t4 = (1.0 - y) / (1.0 - x);
    const Complex t5 = (1.0 - 1.0 / y) / (1.0 - 1.0 / x);
    const double s = bloch_wigner(x).value - bloch_wigner(y).value +
                     bloch_wigner(t3).value - bloch_wigner(t4).value +
                     bloch_wigner(t5).value;
    return std::fabs(s);
}

double trisection_defect(Complex z) {
    if (z.imag() == 0.0)
        throw std::domain_error("trisection_defect: z must not be real");
    const Complex zb = std::conj(z);
    const Complex a = z / zb;
    const Complex b = (1.0 - 1.0 / z) / (1.0 - 1.0 / zb);
    const Complex c = (1.0 - zb) / (1.0 - z);
    const double half = 0.5 * (bloch_wigner(a).value + bloch_wigner(b).value +
                               bloch_wigner(c).value);
    return std::fabs(bloch_wigner(z).value - half);
}

}  // namespace crv
