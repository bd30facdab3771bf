#pragma once

// Derivations of quotients Phi * N / prod P_i^e_i where
// Phi = exp(g / prod P_i^m_i) * prod P_i^s_i and the s_i are polynomials in
// auxiliary symbols. Internal to the mu and integrals modules.

#include "intfac/ode.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace intfac::detail {

using Derivation = std::function<MultiPoly(const MultiPoly&)>;

struct PowerContext {
    std::vector<MultiPoly> bases;
    std::vector<MultiPoly> expo;
    MultiPoly g;
    std::vector<unsigned> m;

    std::size_t add_base(const MultiPoly& P, const MultiPoly& s = MultiPoly());
};

struct PowerFrac {
    MultiPoly num;
    std::vector<unsigned> e;
};

PowerFrac apply(const PowerContext& ctx, const PowerFrac& f, const Derivation& d);
PowerFrac add(const PowerContext& ctx, const PowerFrac& a, const PowerFrac& b);
void reduce(const PowerContext& ctx, PowerFrac& f);

struct PowerProduct {
    MultiPoly prefactor{1};
    std::vector<MultiPoly> bases;
    std::vector<MultiPoly> expo;
    // exp(b0 * prod Q_j^b_j)
    Rational b0 = 0;
    std::vector<std::pair<MultiPoly, int>> q;
};

MultiPoly euler_residual(const PowerProduct& pp, const OdeSystem& ode);
MultiPoly must_residual(const PowerProduct& pp, const OdeSystem& ode);

} // namespace intfac::detail
