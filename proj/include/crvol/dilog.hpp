#pragma once

#include "crvol/types.hpp"

namespace crv {

// Value of the single-valued dilogarithm together with a conservative bound
// on the numerical error of the evaluation: series truncation bound plus a
// ten-ulp rounding slack scaled by the magnitudes combined.
struct DilogResult {
    double value;
    double estimated_error;
};

// Single-valued (Bloch-Wigner) dilogarithm
//     D(z) = Im Li2(z) + log|z| * arg(1 - z),
// continuous on the whole Riemann sphere, vanishing on the real line and at
// 0, 1, infinity. Inputs within 1e-14 of 0 or 1 return exactly 0 with an
// error bound of order |d log d| for d the distance to the endpoint.
DilogResult bloch_wigner(const ExtendedComplex& z);

// Angle form Lambda(theta) = D(e^{2 i theta}) / 2; pi-periodic and odd.
DilogResult lobachevsky(double theta);

// Absolute defect of the five-term functional equation
//     D(x) - D(y) + D(y/x) - D((1-y)/(1-x)) + D((1-y^-1)/(1-x^-1)) = 0.
// Throws std::domain_error when x or y is within 1e-14 of {0, 1}.
double five_term_defect(Complex x, Complex y);

// Absolute defect of the unit-circle decomposition
//     D(z) = ( D(z/conj z) + D((1-1/z)/(1-1/conj z)) + D((1-conj z)/(1-z)) ) / 2.
// Throws std::domain_error for real z (the three ratios degenerate there).
double trisection_defect(Complex z);

}  // namespace crv
