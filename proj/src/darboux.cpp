#include "intfac/darboux.hpp"

#include "intfac/algebra.hpp"
#include "intfac/errors.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace intfac {

std::string to_string(CandidateSource s)
{
    switch (s) {
    case CandidateSource::TrivialFactorOfA: return "TrivialFactorOfA";
    case CandidateSource::TrivialFactorOfB: return "TrivialFactorOfB";
    case CandidateSource::Resultant: return "Resultant";
    case CandidateSource::Oracle: return "Oracle";
    }
    return "?";
}

namespace {

MultiPoly darboux_image(const MultiPoly& P, const OdeSystem& ode)
{
    return ode.B * d_apply(P, ode.n) + ode.A * derivative(P, ode.top());
}

void append_unique(std::vector<std::pair<MultiPoly, int>>& seen, const MultiPoly& F, int alpha, bool& fresh)
{
    for (const auto& [g, a] : seen) {
        if (a == alpha && g == F) {
            fresh = false;
            return;
        }
    }
    seen.emplace_back(F, alpha);
    fresh = true;
}

} // namespace

std::optional<MultiPoly> darboux_test(const MultiPoly& P, const OdeSystem& ode)
{
    if (P.is_constant()) return std::nullopt;
    return divide(darboux_image(P, ode), P);
}

bool structural_candidate(const MultiPoly& P, const OdeSystem& ode)
{
    return derivative(P, ode.top()).is_zero() || d_apply(P, ode.n).is_zero();
}

void sort_candidates(std::vector<DarbouxCandidate>& cands)
{
    std::stable_sort(cands.begin(), cands.end(),
                     [](const DarbouxCandidate& a, const DarbouxCandidate& b) { return compare(a.P, b.P) < 0; });
    auto last = std::unique(cands.begin(), cands.end(),
                            [](const DarbouxCandidate& a, const DarbouxCandidate& b) { return a.P == b.P; });
    cands.erase(last, cands.end());
}

std::vector<DarbouxCandidate> trivial_candidates(const OdeSystem& ode, const FactorLimits& limits)
{
    std::vector<DarbouxCandidate> out;
    const std::pair<const MultiPoly*, CandidateSource> sides[] = {
        {&ode.A, CandidateSource::TrivialFactorOfA},
        {&ode.B, CandidateSource::TrivialFactorOfB},
    };
    for (const auto& [poly, source] : sides) {
        if (poly->is_zero() || poly->is_constant()) continue;
        for (const auto& g : irreducible_factors(*poly, limits)) {
            auto cof = darboux_test(g, ode);
            if (!cof && !structural_candidate(g, ode)) continue;
            DarbouxCandidate c;
            c.P = g;
            c.cofactor = std::move(cof);
            c.source = source;
            out.push_back(std::move(c));
        }
    }
    sort_candidates(out);
    return out;
}

std::vector<HypothesisSolution> solve_hypothesis_constant(const Hypothesis& h, const OdeSystem& ode,
                                                          std::vector<std::string>* diagnostics)
{
    std::vector<HypothesisSolution> out;
    const MultiPoly c = MultiPoly::var(VarId::c());
    const MultiPoly P = Rational(h.alpha) * ode.B + c * h.F;
    if (P.is_zero()) return out;

    VarId zstar = ode.top();
    if (!P.depends_on(zstar)) {
        bool found = false;
        for (VarId v : P.variables()) {
            if (v.is_space()) {
                zstar = v;
                found = true;
                break;
            }
        }
        if (!found) return out;
    }
    const MultiPoly omega = darboux_image(P, ode);
    auto at = [&](const Rational& c0) {
        return Rational(h.alpha) * ode.B + c0 * h.F;
    };
    // R(c) is needed only through the c values making it vanish identically.
    // Sample R at integer points of the other coordinates, keeping the
    // formal degrees in zstar, so each sample is an exact specialization.
    std::vector<VarId> others;
    for (VarId v : omega.variables())
        if (v.is_space() && v != zstar) others.push_back(v);
    for (VarId v : P.variables())
        if (v.is_space() && v != zstar && std::find(others.begin(), others.end(), v) == others.end())
            others.push_back(v);
    std::mt19937_64 rng(0x5eed + zstar.index());
    const MultiPoly lcP = leading_coeff_in(P, zstar);
    const MultiPoly lcO = leading_coeff_in(omega, zstar);

    std::mt19937_64 check_rng(0xc0ffee + zstar.index());
    auto vanishes_at = [&](const Rational& c0) {
        const MultiPoly Pc = at(c0);
        const MultiPoly Oc = evaluate(omega, VarId::c(), c0);
        const MultiPoly lp = leading_coeff_in(Pc, zstar);
        const MultiPoly lo = leading_coeff_in(Oc, zstar);
        int checked = 0;
        for (int attempt = 0; attempt < 40 && checked < 4; ++attempt) {
            MultiPoly Ps = Pc, Os = Oc, a = lp, b = lo;
            for (VarId v : others) {
                Rational val(static_cast<long>(check_rng() % 61) - 30);
                Ps = evaluate(Ps, v, val);
                Os = evaluate(Os, v, val);
                a = evaluate(a, v, val);
                b = evaluate(b, v, val);
            }
            if (a.is_zero() || b.is_zero()) continue;
            ++checked;
            if (!resultant(Os, Ps, zstar).is_zero()) return false;
        }
        return checked > 0 || resultant(Oc, Pc, zstar).is_zero();
    };
    MultiPoly g;
    bool sampled_zero = true;
    int samples = 0;
    for (int attempt = 0; attempt < 40 && samples < 3; ++attempt) {
        MultiPoly Ps = P, Os = omega, lp = lcP, lo = lcO;
        for (VarId v : others) {
            Rational val(static_cast<long>(rng() % 61) - 30);
            Ps = evaluate(Ps, v, val);
            Os = evaluate(Os, v, val);
            lp = evaluate(lp, v, val);
            lo = evaluate(lo, v, val);
        }
        if (lp.is_zero() || lo.is_zero()) continue;
        ++samples;
        MultiPoly r = resultant(Os, Ps, zstar);
        if (r.is_zero()) continue;
        sampled_zero = false;
        g = gcd(g, r);
        if (g.is_constant()) return out;
    }

    if (samples == 0 || sampled_zero) {
        if (vanishes_at(Rational(7, 3)) && vanishes_at(Rational(-5, 2))) {
            MultiPoly fixed = at(1);
            if (!fixed.is_zero() && !fixed.is_constant()) out.push_back({std::nullopt, normalize(fixed)});
            return out;
        }
        if (omega.size() * P.size() > 4000) {
            if (diagnostics)
                diagnostics->push_back("hypothesis alpha=" + std::to_string(h.alpha) + " F=" + h.F.to_string() +
                                       ": sampling inconclusive and the exact resultant is too large; skipped");
            return out;
        }
        const MultiPoly R = resultant(omega, P, zstar);
        g = MultiPoly();
        for (const auto& [mono, coeff] : split_by(R, [](VarId v) { return !v.is_c(); })) {
            g = gcd(g, coeff);
            if (g.is_constant()) return out;
        }
    }
    if (g.is_constant()) return out;

    auto roots = rational_roots(g);
    if (roots.empty() && diagnostics)
        diagnostics->push_back("hypothesis alpha=" + std::to_string(h.alpha) + " F=" + h.F.to_string() +
                               ": c equation " + g.to_string() + " has no rational root");
    for (const Rational& r : roots) {
        MultiPoly fixed = at(r);
        if (fixed.is_zero() || fixed.is_constant() || !vanishes_at(r)) continue;
        out.push_back({r, normalize(fixed)});
    }
    return out;
}

namespace {

// Every divisor of f built from two or more irreducible factors, in order of
// increasing total degree; at most `cap` of them.
std::vector<MultiPoly> composite_divisors(const Factorization& f, unsigned cap, bool& truncated)
{
    std::vector<std::pair<MultiPoly, unsigned>> divs{{MultiPoly(1), 0}};
    for (const auto& [g, m] : f.factors) {
        std::vector<std::pair<MultiPoly, unsigned>> next;
        for (const auto& [d, k] : divs) {
            MultiPoly p = d;
            for (unsigned e = 0; e <= m; ++e) {
                next.emplace_back(p, k + e);
                p *= g;
            }
        }
        divs = std::move(next);
    }
    std::vector<MultiPoly> out;
    for (auto& [d, k] : divs)
        if (k >= 2) out.push_back(std::move(d));
    std::stable_sort(out.begin(), out.end(),
                     [](const MultiPoly& a, const MultiPoly& b) { return a.total_degree() < b.total_degree(); });
    truncated = out.size() > cap;
    if (truncated) out.resize(cap);
    return out;
}

} // namespace

std::string to_string(HypothesisKind k)
{
    switch (k) {
    case HypothesisKind::Factor: return "factor";
    case HypothesisKind::Divisor: return "divisor";
    case HypothesisKind::Shift: return "shift";
    }
    return "?";
}

ResultantSearch resultant_search(const OdeSystem& ode, const FactorLimits& limits, const SearchOptions& options)
{
    if (ode.B.is_constant()) throw PreconditionFailed("resultant method needs nonconstant A and B");
    if (ode.A.is_constant() && !options.shift) throw PreconditionFailed("resultant method needs nonconstant A and B");

    ResultantSearch rs;
    if (!ode.A.is_constant()) {
        std::set<VarId> vars;
        for (VarId v : ode.A.variables()) vars.insert(v);
        for (VarId v : ode.B.variables()) vars.insert(v);
        for (VarId z : vars) {
            MultiPoly R = resultant(ode.A, ode.B, z);
            if (R.is_constant()) continue;
            try {
                rs.resultants.emplace_back(z, factor(R, limits));
            } catch (const DegreeLimitExceeded& e) {
                rs.diagnostics.push_back("R_" + z.name() + "(A,B): " + e.what());
            }
        }
    }
    if (rs.resultants.empty() && !options.shift) {
        if (!rs.diagnostics.empty()) throw DegreeLimitExceeded(rs.diagnostics.front());
        throw PreconditionFailed("every resultant R_z(A,B) is constant");
    }

    rs.candidates = trivial_candidates(ode, limits);
    std::vector<std::pair<MultiPoly, int>> seen;
    auto attempt = [&](const MultiPoly& F, int alpha, VarId z, HypothesisKind kind) {
        bool fresh = false;
        append_unique(seen, F, alpha, fresh);
        if (!fresh) return;
        HypothesisTrace trace;
        trace.hypothesis = {alpha, F, z};
        trace.kind = kind;
        trace.solutions = solve_hypothesis_constant(trace.hypothesis, ode, &rs.diagnostics);
        for (const auto& sol : trace.solutions) {
            std::vector<MultiPoly> parts;
            try {
                parts = irreducible_factors(sol.P_hyp, limits);
            } catch (const DegreeLimitExceeded& e) {
                rs.diagnostics.push_back("P_hyp " + sol.P_hyp.to_string() + ": " + e.what());
                continue;
            }
            for (auto& g : parts) {
                auto cof = darboux_test(g, ode);
                if (!cof) continue;
                trace.accepted.push_back(g);
                DarbouxCandidate cand;
                cand.P = g;
                cand.cofactor = std::move(cof);
                cand.source = CandidateSource::Resultant;
                cand.z = z;
                cand.alpha = alpha;
                rs.candidates.push_back(std::move(cand));
            }
        }
        rs.hypotheses.push_back(std::move(trace));
    };

    for (const auto& [z, fac] : rs.resultants)
        for (const auto& [F, mult] : fac.factors)
            for (int alpha : {0, 1}) attempt(F, alpha, z, HypothesisKind::Factor);
    if (options.divisors) {
        for (const auto& [z, fac] : rs.resultants) {
            bool truncated = false;
            for (const auto& F : composite_divisors(fac, options.max_divisors, truncated))
                for (int alpha : {0, 1}) attempt(normalize(F), alpha, z, HypothesisKind::Divisor);
            if (truncated)
                rs.diagnostics.push_back("R_" + z.name() + "(A,B): only the first " +
                                         std::to_string(options.max_divisors) + " composite divisors tried");
        }
    }
    if (options.shift) attempt(MultiPoly(1), 1, ode.top(), HypothesisKind::Shift);
    sort_candidates(rs.candidates);
    return rs;
}

std::vector<DarbouxCandidate> resultant_candidates(const OdeSystem& ode, const FactorLimits& limits,
                                                  const SearchOptions& options)
{
    return resultant_search(ode, limits, options).candidates;
}

bool ak1_divisibility_check(const MultiPoly& P, const OdeSystem& ode, const Ak1Context& context, Ak1Relation relation,
                            const std::vector<VarId>& vars)
{
    const VarId top = ode.top();
    const auto& A = ode.A;
    const auto& B = ode.B;
    MultiPoly T(1);
    for (const auto& q : context.others) T *= q * q;
    const MultiPoly dP = derivative(P, top);
    const MultiPoly DP = d_apply(P, ode.n);

    auto need = [&](std::size_t k) {
        if (vars.size() != k)
            throw ArgumentError("relation needs " + std::to_string(k) + " variables, got " + std::to_string(vars.size()));
    };
    auto need_ps = [&]() -> const MultiPoly& {
        if (!context.ps) throw ArgumentError("relation needs a Darboux polynomial P_s in the context");
        return *context.ps;
    };

    MultiPoly lhs;
    MultiPoly rhs;
    switch (relation) {
    case Ak1Relation::C4: {
        need(2);
        const MultiPoly chain[] = {A, B};
        lhs = repeated_resultant(P, chain, vars);
        MultiPoly inner = T * ((2 * derivative(A, top) + d_apply(B, ode.n)) * dP + DP * derivative(B, top));
        rhs = repeated_resultant(inner, chain, vars);
        break;
    }
    case Ak1Relation::C5: {
        need(3);
        const MultiPoly chain[] = {A, B, derivative(B, top)};
        lhs = repeated_resultant(P, chain, vars);
        MultiPoly inner = T * dP * (2 * derivative(A, top) + d_apply(B, ode.n));
        rhs = repeated_resultant(inner, chain, vars);
        break;
    }
    case Ak1Relation::C6: {
        need(1);
        const MultiPoly& ps = need_ps();
        lhs = resultant(P, ps, vars[0]);
        rhs = resultant(A * T * derivative(ps, top) * (A * dP + B * DP), ps, vars[0]);
        break;
    }
    case Ak1Relation::C7: {
        need(2);
        const MultiPoly& ps = need_ps();
        const MultiPoly chain[] = {ps, B};
        lhs = repeated_resultant(P, chain, vars);
        rhs = repeated_resultant(A * A * T * derivative(ps, top) * dP, chain, vars);
        break;
    }
    }
    if (lhs.is_zero()) return rhs.is_zero();
    return divide(rhs, lhs).has_value();
}

std::vector<Monomial> monomials_up_to(unsigned n, unsigned d, bool include_one)
{
    std::vector<VarId> vars{VarId::x()};
    for (unsigned j = 0; j < n; ++j) vars.push_back(VarId::y(j));
    std::vector<Monomial> out{Monomial()};
    for (VarId v : vars) {
        std::vector<Monomial> next;
        for (const auto& m : out)
            for (unsigned e = 0; m.degree() + e <= d; ++e) next.push_back(e ? m * Monomial::of(v, e) : m);
        out = std::move(next);
    }
    if (!include_one) std::erase_if(out, [](const Monomial& m) { return m.is_one(); });
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return compare(a, b) < 0; });
    return out;
}

std::vector<DarbouxCandidate> ps_oracle_enumerate(const OdeSystem& ode, const std::vector<Monomial>& support,
                                                  unsigned bound, std::uint64_t budget)
{
    const std::size_t k = support.size();
    const std::uint64_t width = 2 * static_cast<std::uint64_t>(bound) + 1;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) {
        count *= width;
        if (count * k > budget)
            throw BudgetExceeded("oracle sweep of " + std::to_string(k) + " monomials with bound " +
                                 std::to_string(bound) + " exceeds budget " + std::to_string(budget));
    }

    std::vector<DarbouxCandidate> out;
    std::vector<long> coeff(k, -static_cast<long>(bound));
    for (std::uint64_t it = 0; it < count; ++it) {
        if (it > 0) {
            for (std::size_t i = 0; i < k; ++i) {
                if (coeff[i] < static_cast<long>(bound)) {
                    ++coeff[i];
                    break;
                }
                coeff[i] = -static_cast<long>(bound);
            }
        }
        auto first = std::find_if(coeff.begin(), coeff.end(), [](long c) { return c != 0; });
        if (first == coeff.end() || *first < 0) continue;
        long g = 0;
        for (long c : coeff) g = std::gcd(g, c);
        if (g != 1) continue;
        std::vector<Term> terms;
        for (std::size_t i = 0; i < k; ++i)
            if (coeff[i]) terms.push_back({support[i], Rational(coeff[i])});
        MultiPoly P = normalize(MultiPoly::from_terms(std::move(terms)));
        if (P.is_constant()) continue;
        auto cof = darboux_test(P, ode);
        if (!cof) continue;
        Factorization f = factor(P);
        if (f.factors.size() != 1 || f.factors[0].second != 1) continue;
        DarbouxCandidate c;
        c.P = std::move(P);
        c.cofactor = std::move(cof);
        c.source = CandidateSource::Oracle;
        out.push_back(std::move(c));
    }
    sort_candidates(out);
    return out;
}

} // namespace intfac
