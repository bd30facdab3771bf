#pragma once

#include "intfac/exponent.hpp"
#include "intfac/ode.hpp"
#include "intfac/ratfunc.hpp"

#include <memory>
#include <string>
#include <vector>

namespace intfac {

enum class ExprKind { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Log, Atan, Exp };

// Immutable expression tree. Constants are non-negative integers; signs and
// fractions are spelled with Neg and Div so that printing and parsing are
// inverse to each other.
class Expr {
public:
    static Expr constant(const Integer& value);
    static Expr var(VarId v);
    static Expr binary(ExprKind kind, Expr lhs, Expr rhs);
    static Expr pow(Expr base, ExponentVal exponent);
    static Expr unary(ExprKind kind, Expr arg);

    ExprKind kind() const { return node_->kind; }
    const Integer& value() const { return node_->value; }
    VarId variable() const { return node_->var; }
    const ExponentVal& exponent() const { return node_->exponent; }
    const Expr& arg(std::size_t i) const { return node_->args[i]; }
    std::size_t arity() const { return node_->args.size(); }

    friend bool operator==(const Expr& a, const Expr& b);

private:
    struct Node {
        ExprKind kind = ExprKind::Const;
        Integer value;
        VarId var;
        ExponentVal exponent;
        std::vector<Expr> args;
    };
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct ParseOptions {
    // exp(...) nodes and rational or parametric exponents (integrating factors)
    bool power_forms = false;
};

Expr parse_expr(const std::string& text, const ParseOptions& options = {});
std::string print(const Expr& e);

// "y'' = rhs" or "y2 = rhs"
OdeSystem parse_ode(const std::string& text);

// Throws NonRationalError for log/atan/exp and symbolic exponents.
RatFunc to_ratfunc(const Expr& e);
// A polynomial in canonical text form (or any expression that evaluates to a
// polynomial); throws SyntaxError otherwise.
MultiPoly parse_poly(const std::string& text);

} // namespace intfac
