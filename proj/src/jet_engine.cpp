#include "jet_engine.hpp"

#include "intfac/errors.hpp"
#include "intfac/factor.hpp"

namespace intfac::detail {

std::size_t PowerContext::add_base(const MultiPoly& P, const MultiPoly& s)
{
    for (std::size_t i = 0; i < bases.size(); ++i) {
        if (bases[i] == P) {
            expo[i] += s;
            return i;
        }
    }
    bases.push_back(P);
    expo.push_back(s);
    return bases.size() - 1;
}

void reduce(const PowerContext& ctx, PowerFrac& f)
{
    if (f.num.is_zero()) {
        std::fill(f.e.begin(), f.e.end(), 0u);
        return;
    }
    for (std::size_t i = 0; i < f.e.size(); ++i) {
        while (f.e[i] > 0) {
            auto q = divide(f.num, ctx.bases[i]);
            if (!q) break;
            f.num = std::move(*q);
            --f.e[i];
        }
    }
}

PowerFrac apply(const PowerContext& ctx, const PowerFrac& f, const Derivation& d)
{
    const std::size_t k = ctx.bases.size();
    std::vector<MultiPoly> dP(k);
    std::vector<std::size_t> S;
    MultiPoly prodS(1);
    for (std::size_t i = 0; i < k; ++i) {
        dP[i] = d(ctx.bases[i]);
        if (!dP[i].is_zero()) {
            S.push_back(i);
            prodS *= ctx.bases[i];
        }
    }
    auto without = [&](std::size_t i) { return exact_quotient(prodS, ctx.bases[i]); };

    PowerFrac out;
    out.e = f.e;
    for (std::size_t i : S) ++out.e[i];
    MultiPoly core = d(f.num) * prodS;
    if (!f.num.is_zero()) {
        for (std::size_t i : S) {
            MultiPoly coef = ctx.expo[i] - MultiPoly(static_cast<long>(f.e[i]));
            if (!coef.is_zero()) core += f.num * coef * dP[i] * without(i);
        }
    }
    if (!ctx.g.is_zero() && !f.num.is_zero()) {
        MultiPoly gterm = d(ctx.g) * prodS;
        for (std::size_t j : S)
            if (ctx.m[j] > 0) gterm -= ctx.g * static_cast<long>(ctx.m[j]) * dP[j] * without(j);
        if (!gterm.is_zero()) {
            MultiPoly qm(1);
            for (std::size_t j = 0; j < k; ++j) {
                if (ctx.m[j] > 0) {
                    qm *= pow(ctx.bases[j], ctx.m[j]);
                    out.e[j] += ctx.m[j];
                }
            }
            core = core * qm + f.num * gterm;
        }
    }
    out.num = std::move(core);
    reduce(ctx, out);
    return out;
}

PowerFrac add(const PowerContext& ctx, const PowerFrac& a, const PowerFrac& b)
{
    if (a.num.is_zero()) return b;
    if (b.num.is_zero()) return a;
    PowerFrac out;
    out.e.resize(a.e.size());
    MultiPoly fa(1);
    MultiPoly fb(1);
    for (std::size_t i = 0; i < a.e.size(); ++i) {
        out.e[i] = std::max(a.e[i], b.e[i]);
        if (out.e[i] > a.e[i]) fa *= pow(ctx.bases[i], out.e[i] - a.e[i]);
        if (out.e[i] > b.e[i]) fb *= pow(ctx.bases[i], out.e[i] - b.e[i]);
    }
    out.num = a.num * fa + b.num * fb;
    reduce(ctx, out);
    return out;
}

namespace {

struct Setup {
    PowerContext ctx;
    // indices and multiplicities of the factors of B
    std::vector<std::pair<std::size_t, unsigned>> bfactors;
    Rational bunit = 1;
};

Setup setup(const PowerProduct& pp, const OdeSystem& ode)
{
    Setup s;
    for (std::size_t i = 0; i < pp.bases.size(); ++i) s.ctx.add_base(pp.bases[i], pp.expo[i]);
    if (!ode.B.is_constant()) {
        try {
            Factorization fb = factor(ode.B);
            s.bunit = fb.unit;
            for (const auto& [f, mult] : fb.factors) s.bfactors.emplace_back(s.ctx.add_base(f), mult);
        } catch (const DegreeLimitExceeded&) {
            s.bfactors.emplace_back(s.ctx.add_base(ode.B), 1u);
        }
    } else {
        s.bunit = ode.B.constant_value();
    }
    std::vector<std::pair<std::size_t, unsigned>> neg;
    if (pp.b0 != 0) {
        MultiPoly g(pp.b0);
        for (const auto& [Q, b] : pp.q) {
            if (b > 0) g *= pow(Q, static_cast<unsigned>(b));
            else neg.emplace_back(s.ctx.add_base(Q), static_cast<unsigned>(-b));
        }
        s.ctx.g = std::move(g);
    }
    s.ctx.m.assign(s.ctx.bases.size(), 0);
    for (const auto& [i, k] : neg) s.ctx.m[i] += k;
    return s;
}

Derivation partial(VarId v)
{
    return [v](const MultiPoly& p) { return derivative(p, v); };
}

PowerFrac negate(PowerFrac f)
{
    f.num = -f.num;
    return f;
}

} // namespace

MultiPoly euler_residual(const PowerProduct& pp, const OdeSystem& ode)
{
    if (2 * ode.n >= VarId::kMaxJet) throw JetOrderError("ODE order too large for the exactness test");
    Setup s = setup(pp, ode);
    const auto& ctx = s.ctx;
    PowerFrac E;
    E.e.assign(ctx.bases.size(), 0);
    for (const auto& [i, mult] : s.bfactors) E.e[i] += mult;
    E.num = pp.prefactor * (ode.B * MultiPoly::var(VarId::y(ode.n)) - ode.A) * (Rational(1) / s.bunit);
    reduce(ctx, E);

    const Derivation Dt = [](const MultiPoly& p) { return total_derivative(p); };
    PowerFrac total;
    total.e.assign(ctx.bases.size(), 0);
    for (unsigned j = 0; j <= ode.n; ++j) {
        PowerFrac t = apply(ctx, E, partial(VarId::y(j)));
        for (unsigned k = 0; k < j && !t.num.is_zero(); ++k) t = apply(ctx, t, Dt);
        total = add(ctx, total, j % 2 ? negate(std::move(t)) : std::move(t));
    }
    return total.num;
}

MultiPoly must_residual(const PowerProduct& pp, const OdeSystem& ode)
{
    if (ode.n < 2) throw NotApplicable("the necessary condition needs order n >= 2");
    Setup s = setup(pp, ode);
    const auto& ctx = s.ctx;
    const unsigned n = ode.n;
    const Derivation D = [n](const MultiPoly& p) { return d_apply(p, n); };
    const Derivation dtop = partial(ode.top());

    PowerFrac mu;
    mu.e.assign(ctx.bases.size(), 0);
    mu.num = pp.prefactor;
    PowerFrac fmu = mu;
    for (const auto& [i, mult] : s.bfactors) fmu.e[i] += mult;
    fmu.num = pp.prefactor * ode.A * (Rational(1) / s.bunit);
    reduce(ctx, fmu);

    PowerFrac t1 = apply(ctx, apply(ctx, mu, dtop), D);
    PowerFrac t2 = apply(ctx, apply(ctx, fmu, dtop), dtop);
    PowerFrac t3 = apply(ctx, mu, partial(VarId::y(n - 2)));
    t3.num *= Rational(2);
    return add(ctx, add(ctx, t1, t2), t3).num;
}

} // namespace intfac::detail
