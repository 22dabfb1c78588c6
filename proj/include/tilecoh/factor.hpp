#pragma once

#include <vector>

#include "tilecoh/polynomial.hpp"

namespace tilecoh {

struct PolyFactor {
  Poly poly;  // primitive integer polynomial, positive leading coefficient
  int multiplicity = 1;
};

/// Factor a nonzero rational polynomial into irreducibles over Q.
/// Constant factors are dropped. Output is sorted by degree, then by coefficients,
/// so results are reproducible.
///
/// Squarefree parts are split by Zassenhaus: factor modulo a small prime with
/// Cantor-Zassenhaus, Hensel-lift, recombine. Intended for desk-scale degrees.
std::vector<PolyFactor> factor(const Poly& p);

bool is_irreducible(const Poly& p);

}  // namespace tilecoh
