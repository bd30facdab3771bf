#include "intfac/expr.hpp"

#include "intfac/errors.hpp"

#include <cctype>

namespace intfac {

Expr Expr::constant(const Integer& value)
{
    if (value < 0) throw ArgumentError("expression constants are non-negative");
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Const;
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::var(VarId v)
{
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Var;
    n->var = v;
    return Expr(std::move(n));
}

Expr Expr::binary(ExprKind kind, Expr lhs, Expr rhs)
{
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->args = {std::move(lhs), std::move(rhs)};
    return Expr(std::move(n));
}

Expr Expr::pow(Expr base, ExponentVal exponent)
{
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Pow;
    n->exponent = std::move(exponent);
    n->args = {std::move(base)};
    return Expr(std::move(n));
}

Expr Expr::unary(ExprKind kind, Expr arg)
{
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->args = {std::move(arg)};
    return Expr(std::move(n));
}

bool operator==(const Expr& a, const Expr& b)
{
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.kind != y.kind) return false;
    switch (x.kind) {
    case ExprKind::Const: return x.value == y.value;
    case ExprKind::Var: return x.var == y.var;
    case ExprKind::Pow:
        if (!(x.exponent == y.exponent)) return false;
        break;
    default: break;
    }
    if (x.args.size() != y.args.size()) return false;
    for (std::size_t i = 0; i < x.args.size(); ++i)
        if (!(x.args[i] == y.args[i])) return false;
    return true;
}

namespace {

enum class Tok { Num, Ident, Op, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> lex(const std::string& s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char ch = static_cast<unsigned char>(s[i]);
        if (std::isspace(ch)) {
            ++i;
        } else if (std::isdigit(ch)) {
            std::size_t start = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            out.push_back({Tok::Num, s.substr(start, i - start), start});
        } else if (std::isalpha(ch) || ch == '_') {
            std::size_t start = i;
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
            while (i < s.size() && s[i] == '\'') ++i;
            out.push_back({Tok::Ident, s.substr(start, i - start), start});
        } else if (std::string_view("+-*/^()").find(static_cast<char>(ch)) != std::string_view::npos) {
            out.push_back({Tok::Op, std::string(1, static_cast<char>(ch)), i});
            ++i;
        } else {
            throw SyntaxError("unexpected character '" + std::string(1, static_cast<char>(ch)) + "' at " +
                              std::to_string(i));
        }
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

std::optional<VarId> resolve_var(const std::string& name)
{
    if (name == "x") return VarId::x();
    if (name[0] == 'y') {
        std::size_t primes = name.find('\'');
        if (primes != std::string::npos) {
            if (primes != 1) return std::nullopt;
            unsigned k = static_cast<unsigned>(name.size() - 1);
            if (k >= VarId::kMaxJet) return std::nullopt;
            return VarId::y(k);
        }
        if (name == "y") return VarId::y(0);
    }
    if (name.find('\'') != std::string::npos) return std::nullopt;
    return VarId::from_name(name);
}

class Parser {
public:
    Parser(const std::string& text, const ParseOptions& opt) : text_(text), toks_(lex(text)), opt_(opt) {}

    Expr parse_all()
    {
        Expr e = expr();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    bool at_op(char c) const { return peek().kind == Tok::Op && peek().text[0] == c; }
    [[noreturn]] void fail(const std::string& what) const
    {
        throw SyntaxError(what + " at position " + std::to_string(peek().pos) + " in '" + text_ + "'");
    }
    void expect(char c)
    {
        if (!at_op(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    Expr expr()
    {
        Expr lhs = term();
        while (at_op('+') || at_op('-')) {
            ExprKind k = at_op('+') ? ExprKind::Add : ExprKind::Sub;
            ++pos_;
            lhs = Expr::binary(k, lhs, term());
        }
        return lhs;
    }

    Expr term()
    {
        Expr lhs = unary();
        while (at_op('*') || at_op('/')) {
            ExprKind k = at_op('*') ? ExprKind::Mul : ExprKind::Div;
            ++pos_;
            lhs = Expr::binary(k, lhs, unary());
        }
        return lhs;
    }

    Expr unary()
    {
        if (at_op('-')) {
            ++pos_;
            return Expr::unary(ExprKind::Neg, unary());
        }
        return power();
    }

    Expr power()
    {
        Expr base = atom();
        if (at_op('^')) {
            ++pos_;
            return Expr::pow(base, exponent());
        }
        return base;
    }

    ExponentVal exponent()
    {
        if (peek().kind == Tok::Num) return ExponentVal(Rational(Integer(toks_[pos_++].text)));
        if (at_op('-')) {
            ++pos_;
            if (peek().kind != Tok::Num) fail("expected integer exponent");
            return ExponentVal(-Rational(Integer(toks_[pos_++].text)));
        }
        if (opt_.power_forms && peek().kind == Tok::Ident) {
            const std::string& name = toks_[pos_++].text;
            if (resolve_var(name) || name.find('\'') != std::string::npos) fail("variable in exponent");
            return ExponentVal::param(name);
        }
        if (at_op('(')) {
            std::size_t start = peek().pos + 1;
            ++pos_;
            while (peek().kind != Tok::End && !at_op(')')) ++pos_;
            if (!at_op(')')) fail("unbalanced exponent");
            std::string inner = text_.substr(start, peek().pos - start);
            ++pos_;
            ExponentVal e = ExponentVal::parse(inner);
            if (!opt_.power_forms && !e.is_integer()) fail("exponent must be an integer");
            return e;
        }
        fail("expected exponent");
    }

    Expr atom()
    {
        const Token& t = peek();
        if (t.kind == Tok::Num) {
            ++pos_;
            return Expr::constant(Integer(t.text));
        }
        if (at_op('(')) {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (t.kind == Tok::Ident) {
            std::string name = t.text;
            ++pos_;
            if (at_op('(')) {
                ExprKind k;
                if (name == "log" || name == "ln") k = ExprKind::Log;
                else if (name == "atan" || name == "arctan") k = ExprKind::Atan;
                else if (name == "exp" && opt_.power_forms) k = ExprKind::Exp;
                else fail("unknown function '" + name + "'");
                ++pos_;
                Expr arg = expr();
                expect(')');
                return Expr::unary(k, arg);
            }
            if (auto v = resolve_var(name)) return Expr::var(*v);
            --pos_;
            fail("unknown symbol '" + name + "'");
        }
        fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }

    const std::string& text_;
    std::vector<Token> toks_;
    ParseOptions opt_;
    std::size_t pos_ = 0;
};

int prec(const Expr& e)
{
    switch (e.kind()) {
    case ExprKind::Add:
    case ExprKind::Sub: return 1;
    case ExprKind::Mul:
    case ExprKind::Div: return 2;
    case ExprKind::Neg: return 3;
    case ExprKind::Pow: return 4;
    default: return 5;
    }
}

std::string wrap(const Expr& e, bool paren)
{
    return paren ? "(" + print(e) + ")" : print(e);
}

void collect_rational(const Expr& e, bool& rational)
{
    if (!rational) return;
    switch (e.kind()) {
    case ExprKind::Log:
    case ExprKind::Atan:
    case ExprKind::Exp: rational = false; return;
    case ExprKind::Pow:
        if (!e.exponent().is_integer()) rational = false;
        break;
    default: break;
    }
    for (std::size_t i = 0; i < e.arity(); ++i) collect_rational(e.arg(i), rational);
}

void collect_vars(const Expr& e, std::vector<VarId>& out)
{
    if (e.kind() == ExprKind::Var) out.push_back(e.variable());
    for (std::size_t i = 0; i < e.arity(); ++i) collect_vars(e.arg(i), out);
}

} // namespace

Expr parse_expr(const std::string& text, const ParseOptions& options)
{
    return Parser(text, options).parse_all();
}

std::string print(const Expr& e)
{
    switch (e.kind()) {
    case ExprKind::Const: return e.value().get_str();
    case ExprKind::Var: return e.variable().name();
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div: {
        const int p = prec(e);
        const char* op = e.kind() == ExprKind::Add ? "+" : e.kind() == ExprKind::Sub ? "-"
                       : e.kind() == ExprKind::Mul ? "*" : "/";
        const Expr& r = e.arg(1);
        return wrap(e.arg(0), prec(e.arg(0)) < p) + op + wrap(r, prec(r) <= p || r.kind() == ExprKind::Neg);
    }
    case ExprKind::Neg: {
        const Expr& a = e.arg(0);
        return "-" + wrap(a, prec(a) <= 3);
    }
    case ExprKind::Pow: return wrap(e.arg(0), prec(e.arg(0)) < 5) + "^" + exponent_text(e.exponent());
    case ExprKind::Log: return "log(" + print(e.arg(0)) + ")";
    case ExprKind::Atan: return "atan(" + print(e.arg(0)) + ")";
    case ExprKind::Exp: return "exp(" + print(e.arg(0)) + ")";
    }
    return {};
}

RatFunc to_ratfunc(const Expr& e)
{
    switch (e.kind()) {
    case ExprKind::Const: return RatFunc(Rational(e.value()));
    case ExprKind::Var: return RatFunc(MultiPoly::var(e.variable()));
    case ExprKind::Add: return to_ratfunc(e.arg(0)) + to_ratfunc(e.arg(1));
    case ExprKind::Sub: return to_ratfunc(e.arg(0)) - to_ratfunc(e.arg(1));
    case ExprKind::Mul: return to_ratfunc(e.arg(0)) * to_ratfunc(e.arg(1));
    case ExprKind::Div: return to_ratfunc(e.arg(0)) / to_ratfunc(e.arg(1));
    case ExprKind::Neg: return -to_ratfunc(e.arg(0));
    case ExprKind::Pow:
        if (!e.exponent().is_integer()) throw NonRationalError("non-integer exponent " + e.exponent().to_string());
        return to_ratfunc(e.arg(0)).pow(static_cast<int>(e.exponent().constant().get_num().get_si()));
    case ExprKind::Log: throw NonRationalError("log is not rational");
    case ExprKind::Atan: throw NonRationalError("atan is not rational");
    case ExprKind::Exp: throw NonRationalError("exp is not rational");
    }
    return {};
}

MultiPoly parse_poly(const std::string& text)
{
    RatFunc r = to_ratfunc(parse_expr(text));
    if (!r.is_polynomial()) throw SyntaxError("'" + text + "' is not a polynomial");
    return r.num() * (Rational(1) / r.den().constant_value());
}

OdeSystem parse_ode(const std::string& text)
{
    std::size_t eq = text.find('=');
    if (eq == std::string::npos || text.find('=', eq + 1) != std::string::npos)
        throw SyntaxError("an ODE needs exactly one '=' in '" + text + "'");
    Expr lhs = parse_expr(text.substr(0, eq));
    if (lhs.kind() != ExprKind::Var || !lhs.variable().is_jet())
        throw SyntaxError("left side of an ODE must be a derivative of y");
    const unsigned n = lhs.variable().jet_order();
    if (n == 0) throw OrderError("ODE order must be at least 1");
    if (n > kMaxOrder) throw OrderError("ODE order " + std::to_string(n) + " exceeds " + std::to_string(kMaxOrder));

    Expr rhs = parse_expr(text.substr(eq + 1));
    bool rational = true;
    collect_rational(rhs, rational);
    if (!rational) throw NonRationalError("right side of an ODE must be a rational function");
    std::vector<VarId> vars;
    collect_vars(rhs, vars);
    for (VarId v : vars) {
        if (!v.is_space()) throw SyntaxError("unknown symbol '" + v.name() + "' in an ODE");
        if (v.is_jet() && v.jet_order() >= n)
            throw OrderError("right side mentions " + v.name() + " in an ODE of order " + std::to_string(n));
    }
    RatFunc f;
    try {
        f = to_ratfunc(rhs);
    } catch (const DivisionByZero& e) {
        throw DegenerateDenominator(e.what());
    }
    return normalize_ode(f.num(), f.den(), n);
}

} // namespace intfac
