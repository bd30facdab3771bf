#pragma once

#include "intfac/poly.hpp"

namespace intfac {

// Reduced quotient num/den: gcd(num, den) = 1, den normalized (integer
// content 1, positive leading coefficient).
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(MultiPoly num) : num_(std::move(num)), den_(1) {}
    RatFunc(const Rational& c) : num_(c), den_(1) {}
    RatFunc(long c) : RatFunc(Rational(c)) {}
    RatFunc(MultiPoly num, MultiPoly den);

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    friend bool operator==(const RatFunc& a, const RatFunc& b) = default;

    RatFunc pow(int e) const;

    std::string to_string() const;

private:
    MultiPoly num_;
    MultiPoly den_;
};

RatFunc derivative(const RatFunc& f, VarId v);

} // namespace intfac
