#pragma once

#include "intfac/darboux.hpp"
#include "intfac/exponent.hpp"
#include "intfac/ode.hpp"
#include "intfac/ratfunc.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace intfac {

// exp(b0 * prod Q_j^b_j)
struct ExpPart {
    Rational b0 = 1;
    std::vector<std::pair<MultiPoly, int>> q_factors;

    friend bool operator==(const ExpPart&, const ExpPart&) = default;
};

// mu = prefactor * prod P_i^a_i * exp(...)
struct MuForm {
    MultiPoly prefactor{1};
    std::vector<std::pair<MultiPoly, ExponentVal>> power_factors;
    std::optional<ExpPart> exp_part;

    std::set<std::string> parameters() const;
    MuForm bind(const std::map<std::string, Rational>& values) const;
    // integer exponents and no exponential part
    bool is_rational() const;
    RatFunc to_ratfunc() const;
    std::string to_string() const;

    friend bool operator==(const MuForm&, const MuForm&) = default;
};

// Inverse of MuForm::to_string; also accepts any product/quotient of
// polynomials, powers with rational or affine parametric exponents and exp().
MuForm parse_mu(const std::string& text);

// Constant prefactor, every polynomial factored, equal bases merged, zero
// exponents dropped, canonical order.
MuForm normal_form(const MuForm& mu);

MuForm assemble_mu(const OdeSystem& ode, const std::vector<DarbouxCandidate>& candidates,
                   const std::vector<ExponentVal>& exponents);

struct Exactness {
    bool exact = false;
    MultiPoly residual;
};

// Euler operator sum_j (-D_t)^j dE/dy_j of E = mu*(y_n - A/B); the residual
// is its numerator after the common power product is cancelled.
Exactness euler_exactness(const MuForm& mu, const OdeSystem& ode);

// D(dmu/dy_{n-1}) + d^2(f mu)/dy_{n-1}^2 + 2 dmu/dy_{n-2}, n >= 2.
Exactness must_check(const MuForm& mu, const OdeSystem& ode);

// euler_exactness after validating a user supplied form (b_j != 0,
// nonconstant Q_j, jets below the ODE order).
Exactness verify_user_mu(const MuForm& mu, const OdeSystem& ode);

struct ExponentSolution {
    // one exponent per candidate, affine in free_params
    std::vector<ExponentVal> assignments;
    std::vector<std::string> free_params;
    bool residual_verified = false;
};

struct SolveOptions {
    std::uint64_t seed = 1;
    // branch nodes explored by the elimination
    unsigned budget = 4000;
};

struct SolveResult {
    std::vector<ExponentSolution> solutions;
    std::vector<std::string> diagnostics;
};

SolveResult solve_exponents(const OdeSystem& ode, const std::vector<DarbouxCandidate>& candidates,
                            const SolveOptions& options = {});

// mu for one solution (parameters left symbolic)
MuForm mu_for(const OdeSystem& ode, const std::vector<DarbouxCandidate>& candidates, const ExponentSolution& sol);

} // namespace intfac
