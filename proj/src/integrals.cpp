#include "intfac/integrals.hpp"

#include "intfac/algebra.hpp"
#include "intfac/errors.hpp"
#include "intfac/factor.hpp"
#include "linsolve.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace intfac {

namespace {

void add_log(std::vector<LogTerm>& logs, const MultiPoly& arg, const Rational& c)
{
    if (c == 0) return;
    for (auto& t : logs) {
        if (t.arg == arg) {
            t.coeff += c;
            std::erase_if(logs, [](const LogTerm& l) { return l.coeff == 0; });
            return;
        }
    }
    logs.push_back({c, arg});
}

FirstIntegral scaled(FirstIntegral z, const Rational& c)
{
    z.rational = z.rational * RatFunc(c);
    for (auto& t : z.logs) t.coeff *= c;
    for (auto& t : z.atans) t.coeff *= c;
    if (c == 0) {
        z.logs.clear();
        z.atans.clear();
    }
    return z;
}

FirstIntegral sum(FirstIntegral a, const FirstIntegral& b)
{
    a.rational = a.rational + b.rational;
    for (const auto& t : b.logs) add_log(a.logs, t.arg, t.coeff);
    for (const auto& t : b.atans) a.atans.push_back(t);
    return a;
}

bool pure(const FirstIntegral& z) { return z.logs.empty() && z.atans.empty(); }

std::optional<Rational> constant_of(const FirstIntegral& z)
{
    if (!pure(z) || !z.rational.is_polynomial() || !z.rational.num().is_constant()) return std::nullopt;
    return z.rational.num().constant_value() / z.rational.den().constant_value();
}

std::string signed_term(bool first, const Rational& c, const std::string& body)
{
    std::string out;
    Rational a = c < 0 ? Rational(-c) : c;
    if (c < 0) out += "-";
    else if (!first) out += "+";
    if (a != 1) out += a.get_str() + "*";
    return out + body;
}

std::optional<Rational> rational_sqrt(const Rational& q)
{
    if (q < 0) return std::nullopt;
    Integer n = q.get_num();
    Integer d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    Integer rn = sqrt(n);
    Integer rd = sqrt(d);
    return Rational(rn, rd);
}

// s with s^2 = p, up to sign
std::optional<MultiPoly> poly_sqrt(const MultiPoly& p)
{
    if (p.is_zero()) return std::nullopt;
    if (p.is_constant()) {
        auto r = rational_sqrt(p.constant_value());
        if (!r) return std::nullopt;
        return MultiPoly(*r);
    }
    Factorization f = factor(p);
    auto r = rational_sqrt(f.unit);
    if (!r) return std::nullopt;
    MultiPoly s(*r);
    for (const auto& [g, m] : f.factors) {
        if (m % 2) return std::nullopt;
        s *= pow(g, m / 2);
    }
    return s;
}

MultiPoly lcm(const MultiPoly& a, const MultiPoly& b)
{
    MultiPoly g = gcd(a, b);
    return exact_quotient(a * b, g);
}

} // namespace

std::string FirstIntegral::to_string() const
{
    std::string out;
    if (!rational.is_zero()) out = rational.to_string();
    for (const auto& t : logs) out += signed_term(out.empty(), t.coeff, "log(" + t.arg.to_string() + ")");
    for (const auto& t : atans) {
        std::string arg = t.den == MultiPoly(1) ? t.num.to_string()
                                                : "(" + t.num.to_string() + ")/(" + t.den.to_string() + ")";
        out += signed_term(out.empty(), t.coeff, "atan(" + arg + ")");
    }
    return out.empty() ? "0" : out;
}

FirstIntegral first_integral_from_expr(const Expr& e)
{
    FirstIntegral z;
    switch (e.kind()) {
    case ExprKind::Const:
    case ExprKind::Var: z.rational = to_ratfunc(e); return z;
    case ExprKind::Add: return sum(first_integral_from_expr(e.arg(0)), first_integral_from_expr(e.arg(1)));
    case ExprKind::Sub:
        return sum(first_integral_from_expr(e.arg(0)), scaled(first_integral_from_expr(e.arg(1)), -1));
    case ExprKind::Neg: return scaled(first_integral_from_expr(e.arg(0)), -1);
    case ExprKind::Mul:
    case ExprKind::Div: {
        FirstIntegral a = first_integral_from_expr(e.arg(0));
        FirstIntegral b = first_integral_from_expr(e.arg(1));
        const bool mul = e.kind() == ExprKind::Mul;
        if (pure(a) && pure(b)) {
            z.rational = mul ? a.rational * b.rational : a.rational / b.rational;
            return z;
        }
        if (auto c = constant_of(b)) {
            if (!mul && *c == 0) throw DivisionByZero("division by zero in '" + print(e) + "'");
            return scaled(a, mul ? *c : Rational(1) / *c);
        }
        if (auto c = constant_of(a); c && mul) return scaled(b, *c);
        throw SyntaxError("'" + print(e) + "' is outside the first-integral term library");
    }
    case ExprKind::Pow: {
        FirstIntegral a = first_integral_from_expr(e.arg(0));
        if (!pure(a) || !e.exponent().is_integer())
            throw SyntaxError("'" + print(e) + "' is outside the first-integral term library");
        z.rational = a.rational.pow(static_cast<int>(e.exponent().constant().get_num().get_si()));
        return z;
    }
    case ExprKind::Log: {
        FirstIntegral a = first_integral_from_expr(e.arg(0));
        if (!pure(a)) throw SyntaxError("log of a non-rational argument");
        if (a.rational.is_zero()) throw DivisionByZero("log(0)");
        for (const auto& [g, m] : squarefree(a.rational.num()).factors) add_log(z.logs, g, m);
        for (const auto& [g, m] : squarefree(a.rational.den()).factors) add_log(z.logs, g, -Rational(m));
        return z;
    }
    case ExprKind::Atan: {
        FirstIntegral a = first_integral_from_expr(e.arg(0));
        if (!pure(a)) throw SyntaxError("atan of a non-rational argument");
        if (!a.rational.num().is_constant() || !a.rational.den().is_constant())
            z.atans.push_back({1, a.rational.num(), a.rational.den()});
        return z;
    }
    case ExprKind::Exp: throw SyntaxError("exp is outside the first-integral term library");
    }
    return z;
}

FirstIntegral parse_first_integral(const std::string& text)
{
    return first_integral_from_expr(parse_expr(text));
}

RatFunc apply_derivation(const FirstIntegral& zeta, const std::function<MultiPoly(const MultiPoly&)>& d)
{
    const auto& r = zeta.rational;
    RatFunc out;
    if (!r.is_zero()) {
        if (r.is_polynomial()) out = RatFunc(d(r.num()), r.den());
        else out = RatFunc(d(r.num()) * r.den() - r.num() * d(r.den()), r.den() * r.den());
    }
    for (const auto& t : zeta.logs) {
        MultiPoly dp = d(t.arg);
        if (!dp.is_zero()) out = out + RatFunc(t.coeff * dp, t.arg);
    }
    for (const auto& t : zeta.atans) {
        MultiPoly top = t.den * d(t.num) - t.num * d(t.den);
        if (!top.is_zero()) out = out + RatFunc(t.coeff * top, t.num * t.num + t.den * t.den);
    }
    return out;
}

Validity verify_first_integral(const FirstIntegral& zeta, const OdeSystem& ode)
{
    const unsigned n = ode.n;
    const VarId top = ode.top();
    RatFunc Dz = apply_derivation(zeta, [n](const MultiPoly& p) { return d_apply(p, n); });
    RatFunc dz = apply_derivation(zeta, [top](const MultiPoly& p) { return derivative(p, top); });
    RatFunc r = Dz + RatFunc(ode.A, ode.B) * dz;
    return {r.is_zero(), r};
}

MuForm mu_from_ratfunc(const RatFunc& r)
{
    MuForm mu;
    if (r.is_zero()) {
        mu.prefactor = MultiPoly();
        return mu;
    }
    Rational unit = 1;
    auto add = [&](const MultiPoly& p, int sign) {
        if (p.is_constant()) {
            unit *= sign > 0 ? p.constant_value() : Rational(1) / p.constant_value();
            return;
        }
        Factorization f;
        try {
            f = factor(p);
        } catch (const DegreeLimitExceeded&) {
            f = squarefree(p);
        }
        unit *= sign > 0 ? f.unit : Rational(1) / f.unit;
        for (const auto& [g, m] : f.factors) mu.power_factors.emplace_back(g, ExponentVal(static_cast<long>(sign * static_cast<int>(m))));
    };
    add(r.num(), 1);
    add(r.den(), -1);
    mu.prefactor = MultiPoly(unit);
    std::sort(mu.power_factors.begin(), mu.power_factors.end(),
              [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
    return mu;
}

GeneratedOde generate_from_integral(const FirstIntegral& zeta, unsigned n)
{
    if (n == 0 || n > kMaxOrder) throw OrderError("order " + std::to_string(n) + " out of range");
    auto check = [n](const MultiPoly& p) {
        if (max_jet_order(p) >= static_cast<int>(n))
            throw JetOrderError("first integral mentions jets of order >= " + std::to_string(n));
        for (VarId v : p.variables())
            if (!v.is_space()) throw ArgumentError("first integral involves " + v.name());
    };
    check(zeta.rational.num());
    check(zeta.rational.den());
    for (const auto& t : zeta.logs) check(t.arg);
    for (const auto& t : zeta.atans) {
        check(t.num);
        check(t.den);
    }
    const VarId top = VarId::y(n - 1);
    RatFunc mu = apply_derivation(zeta, [top](const MultiPoly& p) { return derivative(p, top); });
    if (mu.is_zero()) throw DegenerateIntegral("first integral does not depend on " + top.name());
    RatFunc Dz = apply_derivation(zeta, [n](const MultiPoly& p) { return d_apply(p, n); });
    RatFunc f = -(Dz / mu);
    GeneratedOde g;
    g.ode = normalize_ode(f.num(), f.den(), n);
    g.known_mu = mu_from_ratfunc(mu);
    g.zeta = zeta;
    if (!verify_first_integral(zeta, g.ode).valid) throw Error("generated ODE fails its own first integral");
    return g;
}

QuadratureResult first_integral_n1(const MuForm& mu, const OdeSystem& ode)
{
    if (ode.n != 1) throw NotApplicable("quadrature is implemented for first-order ODEs only");
    QuadratureResult out;
    if (!mu.parameters().empty()) throw ArgumentError("integrating factor has unbound parameters");
    if (!mu.is_rational()) {
        out.reason = "integrating factor is not rational";
        out.one_form = "(" + mu.to_string() + ")*(dy0-(" + RatFunc(ode.A, ode.B).to_string() + ")*dx)";
        return out;
    }
    const VarId X = VarId::x();
    const VarId Y = VarId::y(0);
    const RatFunc m = mu.to_ratfunc();
    const RatFunc ty = m;
    const RatFunc tx = -(m * RatFunc(ode.A, ode.B));
    out.one_form = "(" + ty.to_string() + ")*dy0+(" + tx.to_string() + ")*dx";

    // irreducible denominator factors with their largest multiplicity
    std::vector<std::pair<MultiPoly, unsigned>> dens;
    for (const RatFunc* t : {&ty, &tx}) {
        if (t->den().is_constant()) continue;
        for (const auto& [g, k] : factor(t->den()).factors) {
            auto it = std::find_if(dens.begin(), dens.end(), [&](const auto& e) { return e.first == g; });
            if (it == dens.end()) dens.emplace_back(g, k);
            else it->second = std::max(it->second, k);
        }
    }
    MultiPoly Qr(1);
    for (const auto& [g, k] : dens)
        if (k > 1) Qr *= pow(g, k - 1);

    auto excess = [](const RatFunc& r) {
        return static_cast<int>(r.num().total_degree()) - static_cast<int>(r.den().total_degree());
    };
    const int degN = std::clamp(static_cast<int>(Qr.total_degree()) + 1 + std::max(excess(ty), excess(tx)), 0, 14);

    // each piece: (dy, dx) as unreduced num/den pairs, plus how to rebuild zeta
    struct Piece {
        MultiPoly ny, nx, den;
        int kind; // 0 rational monomial, 1 log, 2 atan
        MultiPoly a, b;
    };
    std::vector<Piece> pieces;
    const MultiPoly dQy = derivative(Qr, Y);
    const MultiPoly dQx = derivative(Qr, X);
    for (const auto& mono : [&] {
             std::vector<Monomial> ms;
             for (int i = 0; i <= degN; ++i)
                 for (int j = 0; i + j <= degN; ++j) {
                     if (i == 0 && j == 0 && Qr.is_constant()) continue;
                     ms.push_back(Monomial::of(X, i) * Monomial::of(Y, j));
                 }
             return ms;
         }()) {
        MultiPoly mp = MultiPoly::term(mono, 1);
        Piece p;
        p.kind = 0;
        p.a = mp;
        p.ny = derivative(mp, Y) * Qr - mp * dQy;
        p.nx = derivative(mp, X) * Qr - mp * dQx;
        p.den = Qr * Qr;
        pieces.push_back(std::move(p));
    }
    // atan terms over a quadratic in y0 leave x-only remainders over its
    // leading coefficient
    std::vector<MultiPoly> logs;
    for (const auto& [d, k] : dens) logs.push_back(d);
    for (const auto& [d, k] : dens) {
        if (d.degree(Y) != 2) continue;
        const MultiPoly lc = coefficients(d, Y)[2];
        if (lc.is_constant()) continue;
        for (const auto& [g, e] : factor(lc).factors)
            if (std::find(logs.begin(), logs.end(), g) == logs.end()) logs.push_back(g);
    }
    for (const MultiPoly& d : logs) {
        Piece p;
        p.kind = 1;
        p.a = d;
        p.ny = derivative(d, Y);
        p.nx = derivative(d, X);
        p.den = d;
        pieces.push_back(std::move(p));
        const VarId t = d.degree(Y) == 2 ? Y : (d.degree(Y) == 0 && d.degree(X) == 2 ? X : Y);
        if (d.degree(t) != 2) continue;
        auto c = coefficients(d, t);
        auto s = poly_sqrt(4 * c[2] * c[0] - c[1] * c[1]);
        if (!s) continue;
        MultiPoly u = 2 * c[2] * MultiPoly::var(t) + c[1];
        Piece q;
        q.kind = 2;
        q.a = u;
        q.b = *s;
        q.ny = *s * derivative(u, Y) - u * derivative(*s, Y);
        q.nx = *s * derivative(u, X) - u * derivative(*s, X);
        q.den = 4 * c[2] * d;
        pieces.push_back(std::move(q));
    }

    MultiPoly L = lcm(ty.den(), tx.den());
    for (const auto& p : pieces) L = lcm(L, p.den);

    std::map<Monomial, std::size_t, MonomialGreater> rowy, rowx;
    std::vector<detail::SparseRow> rows;
    std::vector<Rational> rhs;
    auto row_for = [&](std::map<Monomial, std::size_t, MonomialGreater>& index, const Monomial& mono) {
        auto [it, inserted] = index.try_emplace(mono, rows.size());
        if (inserted) {
            rows.emplace_back();
            rhs.emplace_back(0);
        }
        return it->second;
    };
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        const MultiPoly scale = exact_quotient(L, pieces[k].den);
        const MultiPoly py = pieces[k].ny * scale;
        const MultiPoly px = pieces[k].nx * scale;
        for (const auto& t : py.terms()) rows[row_for(rowy, t.mono)][k] += t.coeff;
        for (const auto& t : px.terms()) rows[row_for(rowx, t.mono)][k] += t.coeff;
    }
    const MultiPoly gy = ty.num() * exact_quotient(L, ty.den());
    const MultiPoly gx = tx.num() * exact_quotient(L, tx.den());
    for (const auto& t : gy.terms()) rhs[row_for(rowy, t.mono)] += t.coeff;
    for (const auto& t : gx.terms()) rhs[row_for(rowx, t.mono)] += t.coeff;
    for (auto& r : rows) std::erase_if(r, [](const auto& kv) { return kv.second == 0; });

    auto u = detail::solve_linear(std::move(rows), std::move(rhs), pieces.size());
    if (!u) {
        out.reason = "no integral with rational, log and rational-argument atan terms over the denominator factors";
        return out;
    }
    FirstIntegral z;
    MultiPoly Nr;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        const Rational& c = (*u)[k];
        if (c == 0) continue;
        const auto& p = pieces[k];
        if (p.kind == 0) Nr += c * p.a;
        else if (p.kind == 1) add_log(z.logs, p.a, c);
        else {
            RatFunc arg(p.a, p.b);
            z.atans.push_back({c, arg.num(), arg.den()});
        }
    }
    z.rational = RatFunc(Nr, Qr);
    if (!verify_first_integral(z, ode).valid) {
        out.reason = "reconstructed integral failed verification";
        return out;
    }
    out.integral = std::move(z);
    return out;
}

FirstIntegral random_integral(std::uint64_t seed, const RandomIntegralConfig& config)
{
    if (config.n == 0 || config.n > 5) throw ArgumentError("random_integral: order must be in 1..5");
    if (config.max_degree == 0 || config.max_degree > 3) throw ArgumentError("random_integral: degree must be in 1..3");
    if (config.max_factors == 0 || config.max_factors > 3) throw ArgumentError("random_integral: factors must be in 1..3");

    std::mt19937_64 rng(seed);
    auto pick = [&rng](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
    std::vector<VarId> vars{VarId::x()};
    for (unsigned j = 0; j < config.n; ++j) vars.push_back(VarId::y(j));
    const VarId top = VarId::y(config.n - 1);

    auto nonzero = [&] {
        long c = 0;
        while (c == 0) c = pick(-3, 3);
        return c;
    };
    auto random_poly = [&](bool with_top) {
        for (;;) {
            const unsigned deg = static_cast<unsigned>(pick(1, config.max_degree));
            const long nterms = pick(2, 3);
            std::vector<Term> terms;
            for (long t = 0; t < nterms; ++t) {
                const unsigned d = t == 0 ? deg : static_cast<unsigned>(pick(0, deg));
                Monomial m;
                for (unsigned k = 0; k < d; ++k) m = m * Monomial::of(vars[static_cast<std::size_t>(pick(0, vars.size() - 1))]);
                terms.push_back({m, Rational(nonzero())});
            }
            if (with_top) terms.push_back({Monomial::of(top), Rational(nonzero())});
            MultiPoly p = MultiPoly::from_terms(std::move(terms));
            if (!p.is_constant()) return normalize(p);
        }
    };
    const Rational coeffs[] = {1, -1, 2, -2, Rational(1, 2), Rational(-1, 2), 3};

    for (;;) {
        FirstIntegral z;
        const long nf = pick(1, config.max_factors);
        const long nnum = pick(1, nf);
        RatFunc rat(1);
        for (long i = 0; i < nf; ++i) {
            RatFunc f(random_poly(i == 0));
            const int e = static_cast<int>(pick(1, 2));
            rat = i < nnum ? rat * f.pow(e) : rat / f.pow(e);
        }
        z.rational = rat;
        if (config.allow_logs) add_log(z.logs, random_poly(false), coeffs[pick(0, 6)]);
        if (config.allow_atans) {
            MultiPoly p = random_poly(false);
            MultiPoly q = pick(0, 1) ? MultiPoly(1) : random_poly(false);
            RatFunc arg(p, q);
            z.atans.push_back({coeffs[pick(0, 6)], arg.num(), arg.den()});
        }
        RatFunc mu = apply_derivation(z, [top](const MultiPoly& p) { return derivative(p, top); });
        if (!mu.is_zero()) return z;
    }
}

} // namespace intfac
