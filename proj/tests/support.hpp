#pragma once

#include "intfac/algebra.hpp"
#include "intfac/expr.hpp"
#include "intfac/poly.hpp"

#include <random>
#include <vector>

namespace testsupport {

using namespace intfac;

inline MultiPoly P(const char* text) { return parse_poly(text); }

// Random polynomial over the given variables: up to `terms` terms, each with
// degree at most `max_deg` in every variable and total degree at most
// `max_total`, integer coefficients in [-cmax, cmax].
inline MultiPoly random_poly(std::mt19937_64& rng, const std::vector<VarId>& vars, unsigned terms, unsigned max_deg,
                             unsigned max_total, long cmax)
{
    std::vector<Term> out;
    std::uniform_int_distribution<long> coeff(-cmax, cmax);
    std::uniform_int_distribution<unsigned> deg(0, max_deg);
    for (unsigned t = 0; t < terms; ++t) {
        Monomial m;
        unsigned total = 0;
        for (VarId v : vars) {
            unsigned e = deg(rng);
            if (total + e > max_total) e = max_total - total;
            total += e;
            if (e) m = m * Monomial::of(v, e);
        }
        long c = coeff(rng);
        if (c) out.push_back({m, Rational(c)});
    }
    return MultiPoly::from_terms(std::move(out));
}

// Determinant by fraction-free (Bareiss) elimination.
inline MultiPoly bareiss_det(std::vector<std::vector<MultiPoly>> m)
{
    const std::size_t n = m.size();
    if (n == 0) return MultiPoly(1);
    MultiPoly prev(1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t r = k + 1;
            while (r < n && m[r][k].is_zero()) ++r;
            if (r == n) return MultiPoly();
            std::swap(m[k], m[r]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_quotient(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
        }
        prev = m[k][k];
    }
    MultiPoly d = m[n - 1][n - 1];
    return negate ? -d : d;
}

// Sylvester matrix of p and q in v, rows of p first.
inline MultiPoly sylvester_resultant(const MultiPoly& p, const MultiPoly& q, VarId v)
{
    if (p.is_zero() || q.is_zero()) return MultiPoly();
    const auto cp = coefficients(p, v);
    const auto cq = coefficients(q, v);
    const std::size_t dp = cp.size() - 1, dq = cq.size() - 1;
    const std::size_t n = dp + dq;
    std::vector<std::vector<MultiPoly>> m(n, std::vector<MultiPoly>(n));
    for (std::size_t r = 0; r < dq; ++r)
        for (std::size_t k = 0; k <= dp; ++k) m[r][r + k] = cp[dp - k];
    for (std::size_t r = 0; r < dp; ++r)
        for (std::size_t k = 0; k <= dq; ++k) m[dq + r][r + k] = cq[dq - k];
    return bareiss_det(std::move(m));
}

} // namespace testsupport
