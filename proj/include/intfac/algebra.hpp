#pragma once

#include "intfac/poly.hpp"

#include <span>
#include <vector>

namespace intfac {

// Greatest common divisor over Q, normalized (integer content 1, positive
// leading coefficient). gcd(p, 0) = normalize(p); gcd of two nonzero
// constants is 1.
MultiPoly gcd(const MultiPoly& p, const MultiPoly& q);

// gcd of the coefficients of p viewed as a polynomial in v, normalized.
MultiPoly content_in(const MultiPoly& p, VarId v);
// p divided by content_in(p, v), normalized.
MultiPoly primitive_part_in(const MultiPoly& p, VarId v);

// Pseudo-remainder of p by q in v: lc_v(q)^(deg p - deg q + 1) * p mod q.
MultiPoly pseudo_remainder(const MultiPoly& p, const MultiPoly& q, VarId v);

// Resultant in v via the subresultant PRS. Equals the Sylvester determinant
// with the rows of p first. If deg_v p = 0 the value is p^(deg_v q) and
// symmetrically; zero if either argument is zero.
MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, VarId v);

// R_{z1,...,zk}(f, (g1,...,gk)): eliminate z1 against the last chain element,
//   R_{z1..zk}(f, (g1..gk)) = R_{z2..zk}(R_z1(f, gk), (R_z1(g1, gk), ..., R_z1(g{k-1}, gk)))
// so that R_{z1,z2}(f, (g, h)) = R_z2(R_z1(f, h), R_z1(g, h)).
MultiPoly repeated_resultant(const MultiPoly& f, std::span<const MultiPoly> chain, std::span<const VarId> vars);

} // namespace intfac
