#include "intfac/ode.hpp"

#include "intfac/algebra.hpp"
#include "intfac/errors.hpp"

namespace intfac {

std::string OdeSystem::to_string() const
{
    const std::string lhs = "y" + std::to_string(n) + " = ";
    if (B == MultiPoly(1)) return lhs + A.to_string();
    const bool bare = A.size() <= 1;
    const bool atom = B.size() == 1 && B.leading_coeff() == 1 && B.leading().mono.factors().size() == 1;
    return lhs + (bare ? A.to_string() : "(" + A.to_string() + ")") + "/" +
           (atom ? B.to_string() : "(" + B.to_string() + ")");
}

OdeSystem normalize_ode(const MultiPoly& A, const MultiPoly& B, unsigned n)
{
    if (B.is_zero()) throw DegenerateDenominator("ODE denominator is zero");
    if (n == 0 || n > kMaxOrder) throw OrderError("ODE order " + std::to_string(n) + " out of range");
    MultiPoly a = A;
    MultiPoly b = B;
    MultiPoly g = gcd(a, b);
    if (!g.is_constant()) {
        a = exact_quotient(a, g);
        b = exact_quotient(b, g);
    }
    for (const MultiPoly* p : {&a, &b})
        if (max_jet_order(*p) >= static_cast<int>(n))
            throw JetOrderError("right-hand side mentions jets of order >= " + std::to_string(n));
    // one constant for both sides: integer coefficients without a common
    // factor, B with positive leading coefficient
    Integer num = 0, den = 1;
    for (const MultiPoly* p : {&a, &b}) {
        for (const auto& t : p->terms()) {
            num = gcd(num, Integer(t.coeff.get_num()));
            den = lcm(den, Integer(t.coeff.get_den()));
        }
    }
    Rational u(num, den);
    u.canonicalize();
    if (b.leading_coeff() < 0) u = -u;
    OdeSystem ode;
    ode.n = n;
    ode.A = a * (Rational(1) / u);
    ode.B = b * (Rational(1) / u);
    return ode;
}

int max_jet_order(const MultiPoly& p)
{
    int top = -1;
    for (VarId v : p.variables())
        if (v.is_jet()) top = std::max(top, static_cast<int>(v.jet_order()));
    return top;
}

MultiPoly d_apply(const MultiPoly& p, unsigned n)
{
    if (max_jet_order(p) >= static_cast<int>(n))
        throw JetOrderError("D for order " + std::to_string(n) + " applied to " + p.to_string());
    MultiPoly r = derivative(p, VarId::x());
    for (unsigned j = 0; j + 1 < n; ++j) {
        MultiPoly d = derivative(p, VarId::y(j));
        if (!d.is_zero()) r += MultiPoly::var(VarId::y(j + 1)) * d;
    }
    return r;
}

MultiPoly jet_total_derivative(const MultiPoly& p, unsigned cap)
{
    if (cap >= VarId::kMaxJet || max_jet_order(p) >= static_cast<int>(cap))
        throw JetOrderError("total derivative beyond jet order " + std::to_string(cap));
    return d_apply(p, cap + 1);
}

MultiPoly total_derivative(const MultiPoly& p)
{
    return jet_total_derivative(p, static_cast<unsigned>(max_jet_order(p) + 1));
}

} // namespace intfac
