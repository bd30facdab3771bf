#pragma once

#include "intfac/poly.hpp"

#include <string>

namespace intfac {

// y_n = A/B with gcd(A, B) = 1, integer coefficients without a common
// factor and B's leading coefficient positive.
struct OdeSystem {
    unsigned n = 1;
    MultiPoly A;
    MultiPoly B{1};

    VarId top() const { return VarId::y(n - 1); }
    // "y'' = (A)/(B)" in indexed variables
    std::string to_string() const;

    friend bool operator==(const OdeSystem&, const OdeSystem&) = default;
};

// Highest jet order the alphabet can hold for an ODE of order n after the
// exactness test prolongs it to y_{2n}.
inline constexpr unsigned kMaxOrder = (VarId::kMaxJet - 1) / 2;

OdeSystem normalize_ode(const MultiPoly& A, const MultiPoly& B, unsigned n);

// D = d/dx + sum_{j=0}^{n-2} y_{j+1} d/dy_j
MultiPoly d_apply(const MultiPoly& p, unsigned n);

// D_t = d/dx + sum_{j>=0} y_{j+1} d/dy_j. p may only involve y_0 .. y_{cap-1};
// the result may involve y_cap.
MultiPoly jet_total_derivative(const MultiPoly& p, unsigned cap);
// Same operator without a cap check (cap = alphabet size).
MultiPoly total_derivative(const MultiPoly& p);

// Highest jet order occurring in p, or -1 when p involves no y_j.
int max_jet_order(const MultiPoly& p);

} // namespace intfac
