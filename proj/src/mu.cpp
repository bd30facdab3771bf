#include "intfac/mu.hpp"

#include "intfac/algebra.hpp"
#include "intfac/errors.hpp"
#include "intfac/expr.hpp"
#include "intfac/factor.hpp"
#include "jet_engine.hpp"

#include <algorithm>
#include <random>

namespace intfac {

namespace {

using PowerList = std::vector<std::pair<MultiPoly, ExponentVal>>;

void merge_power(PowerList& list, const MultiPoly& base, const ExponentVal& e)
{
    for (auto& [b, x] : list) {
        if (b == base) {
            x = x + e;
            return;
        }
    }
    list.emplace_back(base, e);
}

void tidy(PowerList& list)
{
    std::erase_if(list, [](const auto& pe) { return pe.second == ExponentVal(); });
    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
}

ExponentVal times(const ExponentVal& a, const ExponentVal& b)
{
    if (a.is_fixed()) return b * a.constant();
    if (b.is_fixed()) return a * b.constant();
    throw SyntaxError("product of two symbolic exponents " + a.to_string() + " and " + b.to_string());
}

std::string base_text(const MultiPoly& p)
{
    const bool atom = p.size() == 1 && p.leading_coeff() == 1 && p.leading().mono.factors().size() == 1 &&
                      p.leading().mono.degree() == 1;
    return atom ? p.to_string() : "(" + p.to_string() + ")";
}

// mu-text evaluation: rat * prod base^e * exp(G)
struct PowerForm {
    RatFunc rat{1};
    PowerList pw;
    RatFunc G{0};

    bool pure() const { return pw.empty() && G.is_zero(); }
};

PowerForm convert(const Expr& e)
{
    PowerForm out;
    switch (e.kind()) {
    case ExprKind::Const:
    case ExprKind::Var: out.rat = to_ratfunc(e); return out;
    case ExprKind::Add:
    case ExprKind::Sub: {
        PowerForm a = convert(e.arg(0));
        PowerForm b = convert(e.arg(1));
        if (!a.pure() || !b.pure())
            throw SyntaxError("sum involving a non-rational power or exp() in '" + print(e) + "'");
        out.rat = e.kind() == ExprKind::Add ? a.rat + b.rat : a.rat - b.rat;
        return out;
    }
    case ExprKind::Mul:
    case ExprKind::Div: {
        PowerForm a = convert(e.arg(0));
        PowerForm b = convert(e.arg(1));
        const bool mul = e.kind() == ExprKind::Mul;
        out.rat = mul ? a.rat * b.rat : a.rat / b.rat;
        out.pw = a.pw;
        for (const auto& [base, x] : b.pw) merge_power(out.pw, base, mul ? x : -x);
        out.G = mul ? a.G + b.G : a.G - b.G;
        return out;
    }
    case ExprKind::Neg: {
        out = convert(e.arg(0));
        out.rat = -out.rat;
        return out;
    }
    case ExprKind::Pow: {
        PowerForm c = convert(e.arg(0));
        const ExponentVal& x = e.exponent();
        if (x.is_integer()) {
            const int k = static_cast<int>(x.constant().get_num().get_si());
            out.rat = c.rat.pow(k);
            for (const auto& [base, y] : c.pw) out.pw.emplace_back(base, y * Rational(k));
            out.G = c.G * RatFunc(Rational(k));
            return out;
        }
        if (!c.G.is_zero()) throw SyntaxError("non-integer power of exp()");
        for (const auto& [base, y] : c.pw) out.pw.emplace_back(base, times(y, x));
        if (c.rat.num().is_zero()) throw SyntaxError("non-integer power of zero");
        Factorization fn = factor(c.rat.num());
        Factorization fd = c.rat.den().is_constant() ? Factorization{} : factor(c.rat.den());
        Rational unit = fn.unit / (c.rat.den().is_constant() ? c.rat.den().constant_value() : fd.unit);
        if (unit != 1) throw SyntaxError("constant " + unit.get_str() + " raised to a non-integer power");
        for (const auto& [f, mult] : fn.factors) merge_power(out.pw, f, x * Rational(mult));
        for (const auto& [f, mult] : fd.factors) merge_power(out.pw, f, -(x * Rational(mult)));
        return out;
    }
    case ExprKind::Exp: {
        PowerForm c = convert(e.arg(0));
        if (!c.pure()) throw SyntaxError("exp() of a non-rational argument");
        out.G = c.rat;
        return out;
    }
    case ExprKind::Log:
    case ExprKind::Atan: throw SyntaxError("log/atan cannot appear in an integrating factor");
    }
    return out;
}

std::vector<std::pair<MultiPoly, int>> factor_signed(const MultiPoly& p, int sign, Rational& unit)
{
    std::vector<std::pair<MultiPoly, int>> out;
    if (p.is_constant()) {
        unit *= sign > 0 ? p.constant_value() : Rational(1) / p.constant_value();
        return out;
    }
    Factorization f = factor(p);
    unit *= sign > 0 ? f.unit : Rational(1) / f.unit;
    for (const auto& [g, m] : f.factors) out.emplace_back(g, sign * static_cast<int>(m));
    return out;
}

std::optional<ExpPart> exp_part_of(const RatFunc& G)
{
    if (G.is_zero()) return std::nullopt;
    ExpPart ep;
    Rational unit = 1;
    auto num = factor_signed(G.num(), 1, unit);
    auto den = factor_signed(G.den(), -1, unit);
    ep.b0 = unit;
    ep.q_factors = num;
    ep.q_factors.insert(ep.q_factors.end(), den.begin(), den.end());
    std::sort(ep.q_factors.begin(), ep.q_factors.end(),
              [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
    return ep;
}

RatFunc exp_argument(const ExpPart& ep)
{
    RatFunc G(ep.b0);
    for (const auto& [Q, b] : ep.q_factors) G = G * RatFunc(Q).pow(b);
    return G;
}

void check_space(const MultiPoly& p, const OdeSystem& ode, const char* what)
{
    for (VarId v : p.variables()) {
        if (!v.is_space() || (v.is_jet() && v.jet_order() >= ode.n))
            throw ArgumentError(std::string(what) + " " + p.to_string() + " involves " + v.name() +
                                ", outside x, y0..y" + std::to_string(ode.n - 1));
    }
}

detail::PowerProduct power_product(const MuForm& mu, const OdeSystem& ode)
{
    check_space(mu.prefactor, ode, "prefactor");
    if (mu.prefactor.is_zero()) throw ArgumentError("integrating factor is zero");
    detail::PowerProduct pp;
    pp.prefactor = mu.prefactor;
    for (const auto& [P, a] : mu.power_factors) {
        if (P.is_constant()) throw ArgumentError("constant base in an integrating factor");
        check_space(P, ode, "factor");
        if (!a.is_fixed()) throw ArgumentError("unbound parameter in exponent " + a.to_string() + " of " + P.to_string());
        pp.bases.push_back(P);
        pp.expo.emplace_back(a.constant());
    }
    if (mu.exp_part) {
        pp.b0 = mu.exp_part->b0;
        for (const auto& [Q, b] : mu.exp_part->q_factors) {
            if (b == 0) throw ArgumentError("exponent b_j = 0 for " + Q.to_string() + " in the exponential part");
            if (Q.is_constant()) throw ArgumentError("constant Q_j in the exponential part");
            check_space(Q, ode, "exponential factor");
            pp.q.emplace_back(Q, b);
        }
    }
    return pp;
}

} // namespace

std::set<std::string> MuForm::parameters() const
{
    std::set<std::string> out;
    for (const auto& [P, a] : power_factors)
        for (const auto& [name, c] : a.params()) out.insert(name);
    return out;
}

MuForm MuForm::bind(const std::map<std::string, Rational>& values) const
{
    MuForm r = *this;
    for (auto& [P, a] : r.power_factors) a = a.bind(values);
    return r;
}

bool MuForm::is_rational() const
{
    if (exp_part) return false;
    return std::all_of(power_factors.begin(), power_factors.end(), [](const auto& pe) { return pe.second.is_integer(); });
}

RatFunc MuForm::to_ratfunc() const
{
    if (!is_rational()) throw NonRationalError("integrating factor " + to_string() + " is not rational");
    RatFunc r(prefactor);
    for (const auto& [P, a] : power_factors) r = r * RatFunc(P).pow(static_cast<int>(a.constant().get_num().get_si()));
    return r;
}

std::string MuForm::to_string() const
{
    std::vector<std::string> num;
    std::vector<std::string> den;
    for (const auto& [P, a] : power_factors) {
        if (a == ExponentVal()) continue;
        if (a.is_integer() && a.constant() < 0) {
            const ExponentVal k = -a;
            den.push_back(k == ExponentVal(1) ? base_text(P) : base_text(P) + "^" + exponent_text(k));
        } else if (a == ExponentVal(1)) {
            num.push_back(base_text(P));
        } else {
            num.push_back(base_text(P) + "^" + exponent_text(a));
        }
    }
    if (exp_part) num.push_back("exp(" + exp_argument(*exp_part).to_string() + ")");
    if (prefactor != MultiPoly(1) || num.empty()) {
        std::string pre = prefactor.size() > 1 ? "(" + prefactor.to_string() + ")" : prefactor.to_string();
        num.insert(num.begin(), pre);
    }
    auto join = [](const std::vector<std::string>& parts) {
        std::string out;
        for (const auto& s : parts) out += (out.empty() ? "" : "*") + s;
        return out;
    };
    std::string out = join(num);
    if (den.empty()) return out;
    return out + "/" + (den.size() == 1 ? den[0] : "(" + join(den) + ")");
}

MuForm parse_mu(const std::string& text)
{
    ParseOptions opt;
    opt.power_forms = true;
    PowerForm pf = convert(parse_expr(text, opt));
    MuForm mu;
    mu.prefactor = pf.rat.num();
    mu.power_factors = pf.pw;
    if (!pf.rat.den().is_constant()) {
        Factorization fd = factor(pf.rat.den());
        mu.prefactor *= Rational(1) / fd.unit;
        for (const auto& [f, mult] : fd.factors) merge_power(mu.power_factors, f, ExponentVal(-static_cast<long>(mult)));
    } else {
        mu.prefactor *= Rational(1) / pf.rat.den().constant_value();
    }
    tidy(mu.power_factors);
    mu.exp_part = exp_part_of(pf.G);
    return mu;
}

MuForm normal_form(const MuForm& mu)
{
    MuForm out;
    PowerList pw;
    Rational unit = 1;
    if (mu.prefactor.is_constant()) {
        unit = mu.prefactor.constant_value();
    } else {
        Factorization f = factor(mu.prefactor);
        unit = f.unit;
        for (const auto& [g, m] : f.factors) merge_power(pw, g, ExponentVal(static_cast<long>(m)));
    }
    for (const auto& [P, a] : mu.power_factors) {
        Factorization f = factor(P);
        if (f.unit != 1) {
            if (!a.is_integer()) throw ArgumentError("base " + P.to_string() + " is not normalized");
            unit *= pow(f.unit, static_cast<unsigned>(std::abs(a.constant().get_num().get_si())));
            if (a.constant() < 0) unit = Rational(1) / unit;
        }
        for (const auto& [g, m] : f.factors) merge_power(pw, g, a * Rational(m));
    }
    tidy(pw);
    out.prefactor = MultiPoly(unit);
    out.power_factors = std::move(pw);
    if (mu.exp_part) out.exp_part = exp_part_of(exp_argument(*mu.exp_part));
    return out;
}

MuForm assemble_mu(const OdeSystem& ode, const std::vector<DarbouxCandidate>& candidates,
                   const std::vector<ExponentVal>& exponents)
{
    if (candidates.size() != exponents.size())
        throw ArgumentError("assemble_mu: " + std::to_string(candidates.size()) + " candidates but " +
                            std::to_string(exponents.size()) + " exponents");
    MuForm mu;
    mu.prefactor = ode.B;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (candidates[j].P == candidates[i].P)
                throw ArgumentError("duplicate candidate " + candidates[i].P.to_string());
        mu.power_factors.emplace_back(candidates[i].P, exponents[i]);
    }
    std::sort(mu.power_factors.begin(), mu.power_factors.end(),
              [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
    return mu;
}

Exactness euler_exactness(const MuForm& mu, const OdeSystem& ode)
{
    MultiPoly r = detail::euler_residual(power_product(mu, ode), ode);
    return {r.is_zero(), r};
}

Exactness must_check(const MuForm& mu, const OdeSystem& ode)
{
    if (ode.n < 2) throw NotApplicable("must_check needs order n >= 2");
    MultiPoly r = detail::must_residual(power_product(mu, ode), ode);
    return {r.is_zero(), r};
}

Exactness verify_user_mu(const MuForm& mu, const OdeSystem& ode)
{
    return euler_exactness(mu, ode);
}

// ------------------------------------------------------------- exponents

namespace {

using Subst = std::map<unsigned, MultiPoly>;

MultiPoly apply_subst(MultiPoly p, const Subst& s)
{
    for (const auto& [k, v] : s)
        if (p.depends_on(VarId::aux(k))) p = substitute(p, VarId::aux(k), v);
    return p;
}

void bind_var(Subst& s, unsigned k, const MultiPoly& value)
{
    for (auto& [j, v] : s)
        if (v.depends_on(VarId::aux(k))) v = substitute(v, VarId::aux(k), value);
    s[k] = value;
}

class Eliminator {
public:
    Eliminator(unsigned budget, std::vector<std::string>& diags) : budget_(budget), diags_(diags) {}

    std::vector<Subst> found;

    void run(std::vector<MultiPoly> eqs, Subst subst)
    {
        if (++nodes_ > budget_)
            throw EliminationBudgetExceeded("exponent elimination exceeded " + std::to_string(budget_) + " branches");
        std::vector<MultiPoly> cur;
        for (;;) {
            cur.clear();
            std::set<MultiPoly, PolyLess> seen;
            for (const auto& e : eqs) {
                MultiPoly q = apply_subst(e, subst);
                if (q.is_zero()) continue;
                if (q.is_constant()) return;
                q = normalize(q);
                if (seen.insert(q).second) cur.push_back(std::move(q));
            }
            auto lin = std::find_if(cur.begin(), cur.end(), [](const MultiPoly& q) { return q.total_degree() == 1; });
            if (lin == cur.end()) break;
            const VarId pivot = lin->variables().back();
            const auto coeffs = coefficients(*lin, pivot);
            const Rational c = coeffs[1].constant_value();
            bind_var(subst, pivot.aux_index(), coeffs[0] * (Rational(-1) / c));
            eqs = cur;
        }
        if (cur.empty()) {
            found.push_back(std::move(subst));
            return;
        }

        std::sort(cur.begin(), cur.end(), [](const MultiPoly& a, const MultiPoly& b) {
            auto ka = std::make_tuple(a.variables().size(), a.total_degree(), a.size());
            auto kb = std::make_tuple(b.variables().size(), b.total_degree(), b.size());
            return ka < kb;
        });
        Factorization fac;
        try {
            fac = factor(cur[0]);
        } catch (const DegreeLimitExceeded& e) {
            diags_.push_back(std::string("exponent equation not factored: ") + e.what());
            return;
        }
        if (fac.factors.size() > 1) {
            for (const auto& [f, mult] : fac.factors) {
                std::vector<MultiPoly> next(cur.begin() + 1, cur.end());
                next.push_back(f);
                run(std::move(next), subst);
            }
            return;
        }
        const MultiPoly f = fac.factors[0].first;
        const auto vars = f.variables();
        if (vars.size() == 1) {
            auto roots = rational_roots(f);
            if (roots.empty()) diags_.push_back("exponent equation " + f.to_string() + " has no rational root");
            for (const auto& r : roots) {
                Subst s2 = subst;
                bind_var(s2, vars[0].aux_index(), MultiPoly(r));
                run(cur, std::move(s2));
            }
            return;
        }
        std::set<MultiPoly, PolyLess> present(cur.begin(), cur.end());
        for (std::size_t i = 1; i < cur.size(); ++i) {
            for (VarId v : vars) {
                if (!cur[i].depends_on(v)) continue;
                MultiPoly r = resultant(f, cur[i], v);
                if (r.is_zero()) continue;
                if (r.is_constant()) return;
                r = normalize(r);
                if (present.count(r)) continue;
                std::vector<MultiPoly> next = cur;
                next.push_back(r);
                run(std::move(next), subst);
                return;
            }
        }
        diags_.push_back("exponent equations leave a non-affine family through " + f.to_string() +
                         "; no point reported");
    }

private:
    unsigned budget_;
    unsigned nodes_ = 0;
    std::vector<std::string>& diags_;
};

MultiPoly value_of(const Subst& s, unsigned k)
{
    auto it = s.find(k);
    return it == s.end() ? MultiPoly::var(VarId::aux(k)) : it->second;
}

// every point of `inner` lies in `outer`
bool contained(const Subst& inner, const Subst& outer)
{
    for (const auto& [k, expr] : outer) {
        MultiPoly rhs = expr;
        for (VarId v : expr.variables()) rhs = substitute(rhs, v, value_of(inner, v.aux_index()));
        if (!(value_of(inner, k) == rhs)) return false;
    }
    return true;
}

} // namespace

SolveResult solve_exponents(const OdeSystem& ode, const std::vector<DarbouxCandidate>& candidates,
                            const SolveOptions& options)
{
    if (candidates.empty()) throw ArgumentError("solve_exponents needs at least one candidate");
    const unsigned m = static_cast<unsigned>(candidates.size());
    if (m >= VarId::kMaxAux) throw ArgumentError("too many candidates");
    SolveResult result;

    detail::PowerProduct pp;
    pp.prefactor = ode.B;
    for (unsigned i = 0; i < m; ++i) {
        pp.bases.push_back(candidates[i].P);
        pp.expo.push_back(MultiPoly::var(VarId::aux(i + 1)));
    }
    const MultiPoly R = detail::euler_residual(pp, ode);
    std::vector<MultiPoly> eqs;
    for (auto& [mono, coeff] : split_by(R, [](VarId v) { return v.is_space(); })) eqs.push_back(coeff);

    Eliminator elim(options.budget, result.diagnostics);
    elim.run(eqs, {});

    // drop duplicates and points covered by a larger family
    std::vector<Subst> kept;
    for (std::size_t i = 0; i < elim.found.size(); ++i) {
        bool covered = false;
        for (std::size_t j = 0; j < elim.found.size() && !covered; ++j) {
            if (i == j) continue;
            const bool in = contained(elim.found[i], elim.found[j]);
            if (!in) continue;
            const bool back = contained(elim.found[j], elim.found[i]);
            covered = !back || j < i;
        }
        if (!covered) kept.push_back(elim.found[i]);
    }

    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<long> num(-7, 7);
    std::uniform_int_distribution<long> den(1, 3);
    for (const Subst& s : kept) {
        ExponentSolution sol;
        std::map<unsigned, std::string> names;
        for (unsigned k = 1; k <= m; ++k) {
            if (s.count(k)) continue;
            names[k] = "X" + std::to_string(names.size() + 1);
            sol.free_params.push_back(names[k]);
        }
        for (unsigned k = 1; k <= m; ++k) {
            MultiPoly v = value_of(s, k);
            ExponentVal e;
            for (const auto& t : v.terms()) {
                if (t.mono.is_one()) e = e + ExponentVal(t.coeff);
                else e = e + ExponentVal::param(names.at(t.mono.factors()[0].var.aux_index()), t.coeff);
            }
            sol.assignments.push_back(e);
        }
        const MuForm mu = assemble_mu(ode, candidates, sol.assignments);
        const int rounds = sol.free_params.empty() ? 1 : 3;
        bool ok = true;
        for (int r = 0; r < rounds && ok; ++r) {
            std::map<std::string, Rational> values;
            for (const auto& name : sol.free_params) {
                Rational q(num(rng), den(rng));
                q.canonicalize();
                values[name] = q;
            }
            ok = euler_exactness(mu.bind(values), ode).exact;
        }
        sol.residual_verified = ok;
        if (ok) result.solutions.push_back(std::move(sol));
        else result.diagnostics.push_back("solution " + mu.to_string() + " failed re-verification and was dropped");
    }
    return result;
}

MuForm mu_for(const OdeSystem& ode, const std::vector<DarbouxCandidate>& candidates, const ExponentSolution& sol)
{
    return assemble_mu(ode, candidates, sol.assignments);
}

} // namespace intfac
