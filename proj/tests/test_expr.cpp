#include "support.hpp"

#include "intfac/errors.hpp"
#include "intfac/expr.hpp"
#include "intfac/integrals.hpp"
#include "intfac/mu.hpp"

#include <catch_amalgamated.hpp>

using namespace intfac;
using testsupport::P;

namespace {

Expr v(VarId id) { return Expr::var(id); }
Expr bin(ExprKind k, Expr a, Expr b) { return Expr::binary(k, std::move(a), std::move(b)); }

Expr random_ast(std::mt19937_64& rng, int depth)
{
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 10);
    switch (pick(rng)) {
    case 0: return Expr::constant(Integer(static_cast<long>(rng() % 20)));
    case 1: {
        unsigned k = rng() % 4;
        return v(k == 0 ? VarId::x() : VarId::y(k - 1));
    }
    case 2: return bin(ExprKind::Add, random_ast(rng, depth - 1), random_ast(rng, depth - 1));
    case 3: return bin(ExprKind::Sub, random_ast(rng, depth - 1), random_ast(rng, depth - 1));
    case 4: return bin(ExprKind::Mul, random_ast(rng, depth - 1), random_ast(rng, depth - 1));
    case 5: return bin(ExprKind::Div, random_ast(rng, depth - 1), random_ast(rng, depth - 1));
    case 6: return Expr::unary(ExprKind::Neg, random_ast(rng, depth - 1));
    case 7: return Expr::pow(random_ast(rng, depth - 1), ExponentVal(static_cast<long>(rng() % 8) - 3));
    case 8: return Expr::unary(ExprKind::Log, random_ast(rng, depth - 1));
    case 9: return Expr::unary(ExprKind::Atan, random_ast(rng, depth - 1));
    default: return bin(ExprKind::Mul, v(VarId::x()), random_ast(rng, depth - 1));
    }
}

} // namespace

TEST_CASE("parse_expr examples")
{
    const VarId X = VarId::x(), Y0 = VarId::y(0), Y1 = VarId::y(1);
    CHECK(parse_expr("y/x + log(x)") == bin(ExprKind::Add, bin(ExprKind::Div, v(Y0), v(X)), Expr::unary(ExprKind::Log, v(X))));
    CHECK(parse_expr("atan(y')") == Expr::unary(ExprKind::Atan, v(Y1)));
    CHECK_THROWS_AS(parse_expr("y0^(1/2)"), SyntaxError);
    CHECK_THROWS_AS(parse_expr("2 x"), SyntaxError);
    CHECK_THROWS_AS(parse_expr("sin(x)"), SyntaxError);
    CHECK_THROWS_AS(parse_expr("(x+1"), SyntaxError);
}

TEST_CASE("operator precedence")
{
    const VarId X = VarId::x();
    // ^ binds tighter than unary minus, which binds tighter than * and /
    CHECK(parse_expr("-x^2") == Expr::unary(ExprKind::Neg, Expr::pow(v(X), ExponentVal(2))));
    CHECK(parse_expr("x-x-x") == bin(ExprKind::Sub, bin(ExprKind::Sub, v(X), v(X)), v(X)));
    CHECK(parse_expr("x/x*x") == bin(ExprKind::Mul, bin(ExprKind::Div, v(X), v(X)), v(X)));
    CHECK(to_ratfunc(parse_expr("2-3-4")) == RatFunc(-5));
    CHECK(to_ratfunc(parse_expr("12/3/2")) == RatFunc(2));
}

TEST_CASE("parse_ode examples")
{
    OdeSystem o = parse_ode("y'' = (y'^3 + y'*(x-2) - y)/(y'^2 + (2*y'-1)*(x+y) - x)");
    CHECK(o.n == 2);
    CHECK(o.A == P("y1^3+y1*(x-2)-y0"));
    CHECK(o.B == P("y1^2+(2*y1-1)*(x+y0)-x"));

    o = parse_ode("y' = y/x");
    CHECK(o.n == 1);
    CHECK(o.A == P("y0"));
    CHECK(o.B == P("x"));

    CHECK_THROWS_AS(parse_ode("y'' = y'''"), OrderError);
    CHECK_THROWS_AS(parse_ode("y'' = y2"), OrderError);
    CHECK_THROWS_AS(parse_ode("y' = log(x)"), NonRationalError);
    CHECK_THROWS_AS(parse_ode("y' = atan(y)"), NonRationalError);
    CHECK_THROWS_AS(parse_ode("y' = ("), SyntaxError);
    CHECK_THROWS_AS(parse_ode("y' = 1/(x-x)"), Error);
}

TEST_CASE("coprime normalized right-hand side")
{
    OdeSystem o = parse_ode("y' = (x*y)/(-x^2)");
    CHECK(o.A == P("-y0"));
    CHECK(o.B == P("x"));
    CHECK(gcd(o.A, o.B).is_constant());
}

TEST_CASE("prime and indexed syntax agree")
{
    CHECK(parse_ode("y'' = y'*x - y") == parse_ode("y2 = y1*x - y0"));
    CHECK(parse_ode("y''' = y''/(y'+y)") == parse_ode("y3 = y2/(y1+y0)"));
    CHECK(parse_expr("y''+y'+y") == parse_expr("y2+y1+y0"));
    CHECK(parse_poly("y'^2-x") == parse_poly("y1^2-x"));
}

TEST_CASE("print examples")
{
    CHECK(P("2*x").to_string() == "2*x");
    CHECK(parse_first_integral("y0/x").to_string() == "y0/x");

    const MuForm ref = parse_mu("(y1^2+(2*y1-1)*(x+y0)-x)*(y1+y0+x)^X1*(y1^2-2*y1-y0)^(-X1-2)");
    CHECK(ref.prefactor == P("y1^2+2*x*y1+2*y0*y1-2*x-y0"));
    REQUIRE(ref.power_factors.size() == 2);
    const std::string text = ref.to_string();
    CHECK(text == "(y1^2+2*y0*y1+2*x*y1-y0-2*x)*(y1+y0+x)^X1*(y1^2-2*y1-y0)^(-X1-2)");
    CHECK(parse_mu(text) == ref);
}

TEST_CASE("random ASTs survive print and parse")
{
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 1000; ++i) {
        Expr e = random_ast(rng, 4);
        const std::string text = print(e);
        INFO(text);
        CHECK(parse_expr(text) == e);
        CHECK(print(parse_expr(text)) == text);
    }
}

TEST_CASE("polynomial text round trip")
{
    std::mt19937_64 rng(9);
    const std::vector<VarId> vars{VarId::x(), VarId::y(0), VarId::y(1), VarId::y(2)};
    for (int i = 0; i < 200; ++i) {
        MultiPoly p = testsupport::random_poly(rng, vars, 5, 3, 6, 12);
        p *= Rational(1, 1 + static_cast<long>(rng() % 5));
        CHECK(parse_poly(p.to_string()) == p);
    }
}
