#pragma once

#include <array>
#include <random>

#include "crvol/heisenberg.hpp"
#include "crvol/pentad.hpp"

namespace crv {

// Uniform point in the box |Re z|, |Im z| <= 2, |t| <= 4.
HeisenbergPoint random_heisenberg_point(std::mt19937_64& rng);

// Four points kept away from every degeneracy by rejection: pairwise
// separated, no three near a C-circle, all twelve invariants well off {0,1}
// and of moderate size, all invariant phases bounded away from 0 mod pi.
std::array<HeisenbergPoint, 4> random_generic_quadruple(std::mt19937_64& rng);

// Five points whose coordinate extraction (from_five_points) succeeds with
// every column entry well-conditioned.
std::array<HeisenbergPoint, 5> random_generic_five_points(std::mt19937_64& rng);

// Random matrix preserving the Hermitian form: M* J M = J to machine
// precision. Built by indefinite Gram-Schmidt in the diagonalising basis.
Mat3 random_j_unitary(std::mt19937_64& rng);

// Free coordinates drawn from the annulus 0.2 <= |.| <= 5 minus a disk of
// radius 0.05 around 1, rejected until all thirteen coordinate values and all
// twenty column entries are admissible: at distance >= 0.05 from {0,1} and of
// magnitude <= 50, with |Q| >= 1e-3.
FivePointCoordinates random_five_point_coordinates(std::mt19937_64& rng);

}  // namespace crv
