#include "intfac/ratfunc.hpp"

#include "intfac/algebra.hpp"
#include "intfac/errors.hpp"

namespace intfac {

RatFunc::RatFunc(MultiPoly num, MultiPoly den)
{
    if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
    if (num.is_zero()) {
        den_ = MultiPoly(1);
        return;
    }
    if (!den.is_constant()) {
        MultiPoly g = gcd(num, den);
        if (!g.is_constant()) {
            num = exact_quotient(num, g);
            den = exact_quotient(den, g);
        }
    }
    Rational u = unit_content(den);
    num_ = num * (Rational(1) / u);
    den_ = den * (Rational(1) / u);
}

RatFunc RatFunc::operator-() const
{
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b)
{
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b)
{
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b)
{
    if (b.is_zero()) throw DivisionByZero("division by a zero rational function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::pow(int e) const
{
    if (e >= 0) return RatFunc(intfac::pow(num_, e), intfac::pow(den_, e));
    if (is_zero()) throw DivisionByZero("negative power of zero");
    return RatFunc(intfac::pow(den_, -e), intfac::pow(num_, -e));
}

std::string RatFunc::to_string() const
{
    if (den_ == MultiPoly(1)) return num_.to_string();
    const bool bare = num_.size() == 1 && num_.leading_coeff().get_den() == 1;
    std::string n = bare ? num_.to_string() : "(" + num_.to_string() + ")";
    const bool atom = den_.size() == 1 && den_.leading_coeff() == 1 && den_.leading().mono.factors().size() == 1;
    std::string d = atom ? den_.to_string() : "(" + den_.to_string() + ")";
    return n + "/" + d;
}

RatFunc derivative(const RatFunc& f, VarId v)
{
    if (f.is_polynomial()) return RatFunc(derivative(f.num(), v), f.den());
    return RatFunc(derivative(f.num(), v) * f.den() - f.num() * derivative(f.den(), v), f.den() * f.den());
}

} // namespace intfac
