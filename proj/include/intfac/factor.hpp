#pragma once

#include "intfac/poly.hpp"

#include <utility>
#include <vector>

namespace intfac {

struct Factorization {
    Rational unit = 1;
    // (normalized factor, multiplicity), canonically ordered
    std::vector<std::pair<MultiPoly, unsigned>> factors;

    MultiPoly expand() const;
};

// Desk-scale bounds for the Kronecker reduction. Inputs beyond them raise
// DegreeLimitExceeded instead of returning a coarser factorization.
struct FactorLimits {
    unsigned max_total_degree = 8;
    unsigned max_variables = 5;
    // degree of the univariate Kronecker image
    unsigned max_image_degree = 4000;
};

// Square-free decomposition: pairwise coprime square-free factors.
Factorization squarefree(const MultiPoly& p);

// Complete factorization into irreducibles over Q.
Factorization factor(const MultiPoly& p, const FactorLimits& limits = {});

// Distinct irreducible factors of p (normalized, canonical order).
std::vector<MultiPoly> irreducible_factors(const MultiPoly& p, const FactorLimits& limits = {});

// Rational roots of a polynomial in a single variable, ascending.
std::vector<Rational> rational_roots(const MultiPoly& p);

} // namespace intfac
