#pragma once

#include "intfac/rational.hpp"
#include "intfac/var.hpp"

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace intfac {

struct VarPow {
    VarId var;
    std::uint32_t exp = 0;

    friend bool operator==(const VarPow&, const VarPow&) = default;
};

// Power product of variables, stored sparsely with ascending variable ids.
class Monomial {
public:
    Monomial() = default;

    static Monomial of(VarId v, std::uint32_t e = 1);

    std::uint32_t degree() const { return degree_; }
    std::uint32_t degree(VarId v) const;
    bool is_one() const { return factors_.empty(); }
    std::span<const VarPow> factors() const { return {factors_.data(), factors_.size()}; }
    std::optional<VarId> max_var() const;

    bool divides(const Monomial& other) const;
    Monomial operator*(const Monomial& other) const;
    // Requires divides(other) to hold for `this` being the divisor.
    Monomial quotient(const Monomial& divisor) const;
    Monomial with(VarId v, std::uint32_t e) const;
    Monomial without(VarId v) const { return with(v, 0); }

    std::size_t hash() const;

    friend bool operator==(const Monomial& a, const Monomial& b)
    {
        return a.degree_ == b.degree_ && a.factors_ == b.factors_;
    }

    // Graded lexicographic comparison, largest variable first. Returns <0, 0, >0.
    friend int compare(const Monomial& a, const Monomial& b);

    std::string to_string() const;

private:
    boost::container::small_vector<VarPow, 4> factors_;
    std::uint32_t degree_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

struct MonomialGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
};

struct Term {
    Monomial mono;
    Rational coeff;
};

// Sparse multivariate polynomial over Q in canonical form: nonzero
// coefficients, distinct monomials, terms sorted by descending grlex order.
class MultiPoly {
public:
    MultiPoly() = default;
    MultiPoly(const Rational& c);
    MultiPoly(long c) : MultiPoly(Rational(c)) {}

    static MultiPoly var(VarId v, std::uint32_t e = 1);
    static MultiPoly term(const Monomial& m, const Rational& c);
    static MultiPoly from_terms(std::vector<Term> terms);
    // Terms must already be canonical (descending, distinct, nonzero).
    static MultiPoly from_sorted(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    Rational constant_value() const;
    const Term& leading() const { return terms_.front(); }
    const Rational& leading_coeff() const { return terms_.front().coeff; }
    std::uint32_t total_degree() const;
    std::uint32_t degree(VarId v) const;
    bool depends_on(VarId v) const;
    std::vector<VarId> variables() const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    MultiPoly& operator*=(const Rational& c);

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
    friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
    friend MultiPoly operator*(MultiPoly a, long c) { return a *= Rational(c); }
    friend MultiPoly operator*(long c, MultiPoly a) { return a *= Rational(c); }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b);

    // Canonical text: terms in descending order, explicit '*', '^' for powers.
    std::string to_string() const;

private:
    std::vector<Term> terms_;
};

// Canonical total order on polynomials (term-wise grlex, then coefficients);
// used to make candidate sets deterministic.
int compare(const MultiPoly& a, const MultiPoly& b);
struct PolyLess {
    bool operator()(const MultiPoly& a, const MultiPoly& b) const { return compare(a, b) < 0; }
};

MultiPoly pow(const MultiPoly& p, unsigned e);

// Exact division: the quotient when q divides p, nullopt otherwise.
// Throws DivisionByZero for q == 0.
std::optional<MultiPoly> divide(const MultiPoly& p, const MultiPoly& q);
// Like divide but throws ArgumentError when q does not divide p.
MultiPoly exact_quotient(const MultiPoly& p, const MultiPoly& q);

MultiPoly derivative(const MultiPoly& p, VarId v);

// Coefficients of p viewed as a univariate polynomial in v; index = degree.
std::vector<MultiPoly> coefficients(const MultiPoly& p, VarId v);
MultiPoly from_coefficients(std::span<const MultiPoly> coeffs, VarId v);
MultiPoly leading_coeff_in(const MultiPoly& p, VarId v);

MultiPoly substitute(const MultiPoly& p, VarId v, const MultiPoly& value);
MultiPoly evaluate(const MultiPoly& p, VarId v, const Rational& value);
double evaluate_double(const MultiPoly& p, const std::function<double(VarId)>& point);

// Splits p = sum_k coeff_k * mono_k where mono_k involves only variables with
// keep(v) true and coeff_k involves only the remaining variables.
std::map<Monomial, MultiPoly, MonomialGreater> split_by(const MultiPoly& p,
                                                        const std::function<bool(VarId)>& keep);

// The rational u with p = u * normalize(p); normalize(p) has integer
// coefficients, integer content 1 and positive leading coefficient.
Rational unit_content(const MultiPoly& p);
MultiPoly normalize(const MultiPoly& p);

} // namespace intfac
