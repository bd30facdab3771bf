#pragma once

#include "intfac/rational.hpp"

#include <map>
#include <optional>
#include <string>

namespace intfac {

// Exponent of a factor in an integrating factor: a fixed rational, a named
// parameter, or an affine combination of parameters (e.g. -X1-2).
class ExponentVal {
public:
    ExponentVal() = default;
    ExponentVal(const Rational& c) : constant_(c) {}
    ExponentVal(long c) : constant_(c) {}

    static ExponentVal param(const std::string& name, const Rational& coeff = 1);

    const Rational& constant() const { return constant_; }
    const std::map<std::string, Rational>& params() const { return params_; }
    bool is_fixed() const { return params_.empty(); }
    bool is_integer() const { return is_fixed() && constant_.get_den() == 1; }

    ExponentVal operator+(const ExponentVal& o) const;
    ExponentVal operator-() const;
    ExponentVal operator-(const ExponentVal& o) const { return *this + (-o); }
    ExponentVal operator*(const Rational& c) const;

    // Binds parameters; unbound ones stay symbolic.
    ExponentVal bind(const std::map<std::string, Rational>& values) const;

    friend bool operator==(const ExponentVal&, const ExponentVal&) = default;

    // "X1", "-X1-2", "3", "-1/2"
    std::string to_string() const;
    // Parses the text produced by to_string; throws SyntaxError.
    static ExponentVal parse(const std::string& text);

private:
    Rational constant_ = 0;
    std::map<std::string, Rational> params_;
};

// Text after '^': bare for non-negative integers and single parameters,
// parenthesized otherwise.
std::string exponent_text(const ExponentVal& e);

} // namespace intfac
