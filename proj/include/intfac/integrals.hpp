#pragma once

#include "intfac/expr.hpp"
#include "intfac/mu.hpp"
#include "intfac/ode.hpp"
#include "intfac/ratfunc.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace intfac {

struct LogTerm {
    Rational coeff;
    MultiPoly arg;

    friend bool operator==(const LogTerm&, const LogTerm&) = default;
};

// coeff * atan(num/den)
struct AtanTerm {
    Rational coeff;
    MultiPoly num;
    MultiPoly den{1};

    friend bool operator==(const AtanTerm&, const AtanTerm&) = default;
};

// rational + sum coeff*log(arg) + sum coeff*atan(num/den)
struct FirstIntegral {
    RatFunc rational;
    std::vector<LogTerm> logs;
    std::vector<AtanTerm> atans;

    std::string to_string() const;

    friend bool operator==(const FirstIntegral&, const FirstIntegral&) = default;
};

FirstIntegral first_integral_from_expr(const Expr& e);
FirstIntegral parse_first_integral(const std::string& text);

// Image of zeta under a derivation acting on polynomials.
RatFunc apply_derivation(const FirstIntegral& zeta, const std::function<MultiPoly(const MultiPoly&)>& d);

struct Validity {
    bool valid = false;
    RatFunc residual;
};

// D(zeta) + (A/B) dzeta/dy_{n-1}
Validity verify_first_integral(const FirstIntegral& zeta, const OdeSystem& ode);

struct QuadratureResult {
    std::optional<FirstIntegral> integral;
    // mu*(dy0 - A/B dx) as text
    std::string one_form;
    std::string reason;
};

QuadratureResult first_integral_n1(const MuForm& mu, const OdeSystem& ode);

struct GeneratedOde {
    OdeSystem ode;
    MuForm known_mu;
    FirstIntegral zeta;
};

GeneratedOde generate_from_integral(const FirstIntegral& zeta, unsigned n);

struct RandomIntegralConfig {
    unsigned n = 1;
    unsigned max_factors = 2;
    unsigned max_degree = 1;
    bool allow_logs = false;
    bool allow_atans = false;
};

FirstIntegral random_integral(std::uint64_t seed, const RandomIntegralConfig& config);

// mu as a factored MuForm: constant prefactor, integer exponents.
MuForm mu_from_ratfunc(const RatFunc& r);

} // namespace intfac
