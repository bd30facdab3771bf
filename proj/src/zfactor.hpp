#pragma once

// Univariate factorization over Z (Cantor-Zassenhaus modulo a prime,
// multifactor Hensel lifting, Zassenhaus recombination). Internal to the
// factor module.

#include "intfac/rational.hpp"

#include <vector>

namespace intfac::detail {

// Ascending coefficients, no trailing zeros.
using ZPoly = std::vector<Integer>;

// f: primitive, square-free, degree >= 1, positive leading coefficient.
// Returns the irreducible factors over Z (primitive, positive leading
// coefficient) whose product is f.
std::vector<ZPoly> factor_squarefree(const ZPoly& f);

} // namespace intfac::detail
