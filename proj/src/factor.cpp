#include "intfac/factor.hpp"

#include "intfac/algebra.hpp"
#include "intfac/errors.hpp"
#include "zfactor.hpp"

#include <algorithm>
#include <set>

namespace intfac {

namespace {

using detail::ZPoly;
using FactorList = std::vector<std::pair<MultiPoly, unsigned>>;

// Yun's square-free decomposition in v of f, primitive in v with deg_v f >= 1.
void yun(const MultiPoly& f, VarId v, FactorList& out)
{
    MultiPoly fp = derivative(f, v);
    MultiPoly a0 = gcd(f, fp);
    MultiPoly b = exact_quotient(f, a0);
    MultiPoly c = exact_quotient(fp, a0);
    MultiPoly d = c - derivative(b, v);
    unsigned i = 1;
    while (!b.is_constant()) {
        MultiPoly a = gcd(b, d);
        if (!a.is_constant()) out.emplace_back(normalize(a), i);
        b = exact_quotient(b, a);
        c = exact_quotient(d, a);
        d = c - derivative(b, v);
        ++i;
    }
}

void squarefree_rec(const MultiPoly& q, FactorList& out)
{
    if (q.is_constant()) return;
    const VarId v = q.variables().back();
    MultiPoly cont = content_in(q, v);
    MultiPoly pp = cont.is_constant() ? q : exact_quotient(q, cont);
    yun(pp, v, out);
    squarefree_rec(cont, out);
}

Factorization finish(const MultiPoly& p, FactorList factors)
{
    std::sort(factors.begin(), factors.end(),
              [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
    Factorization result;
    Rational lead = 1;
    for (const auto& [f, m] : factors) lead *= pow(f.leading_coeff(), m);
    result.unit = p.leading_coeff() / lead;
    result.factors = std::move(factors);
    return result;
}

// --------------------------------------------------------------- Kronecker

ZPoly to_zpoly(const MultiPoly& p, VarId v)
{
    ZPoly z(p.degree(v) + 1, 0);
    for (const auto& t : p.terms()) z[t.mono.degree(v)] = t.coeff.get_num();
    return z;
}

MultiPoly from_zpoly(const ZPoly& z, VarId v)
{
    std::vector<Term> terms;
    for (std::size_t i = 0; i < z.size(); ++i)
        if (z[i] != 0) terms.push_back({Monomial::of(v, static_cast<std::uint32_t>(i)), Rational(z[i])});
    return MultiPoly::from_terms(std::move(terms));
}

// Irreducible factors (with multiplicity) of a univariate polynomial in v.
FactorList factor_univariate(const MultiPoly& f, VarId v)
{
    FactorList out;
    FactorList parts;
    MultiPoly g = normalize(f);
    // monomial factor
    std::uint32_t low = g.terms().back().mono.degree(v);
    if (low > 0) {
        out.emplace_back(MultiPoly::var(v), low);
        g = exact_quotient(g, MultiPoly::var(v, low));
    }
    if (!g.is_constant()) yun(g, v, parts);
    for (const auto& [part, mult] : parts) {
        for (auto& z : detail::factor_squarefree(to_zpoly(part, v)))
            out.emplace_back(normalize(from_zpoly(z, v)), mult);
    }
    return out;
}

class Kronecker {
public:
    explicit Kronecker(const MultiPoly& f) : vars_(f.variables())
    {
        std::uint64_t w = 1;
        for (VarId v : vars_) {
            weights_.push_back(w);
            radix_.push_back(f.degree(v) + 1);
            w *= radix_.back();
        }
        span_ = w;
    }

    std::uint64_t image_degree_bound() const { return span_ - 1; }

    MultiPoly image(const MultiPoly& f, VarId t) const
    {
        std::vector<Term> terms;
        for (const auto& term : f.terms()) {
            std::uint64_t e = 0;
            for (std::size_t i = 0; i < vars_.size(); ++i) e += term.mono.degree(vars_[i]) * weights_[i];
            terms.push_back({Monomial::of(t, static_cast<std::uint32_t>(e)), term.coeff});
        }
        return MultiPoly::from_terms(std::move(terms));
    }

    std::optional<MultiPoly> preimage(const MultiPoly& u, VarId t) const
    {
        std::vector<Term> terms;
        for (const auto& term : u.terms()) {
            std::uint64_t e = term.mono.degree(t);
            if (e >= span_) return std::nullopt;
            Monomial m;
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                auto digit = static_cast<std::uint32_t>((e / weights_[i]) % radix_[i]);
                if (digit) m = m * Monomial::of(vars_[i], digit);
            }
            terms.push_back({m, term.coeff});
        }
        return MultiPoly::from_terms(std::move(terms));
    }

private:
    std::vector<VarId> vars_;
    std::vector<std::uint64_t> weights_;
    std::vector<std::uint64_t> radix_;
    std::uint64_t span_ = 1;
};

bool next_combination(std::vector<std::size_t>& idx, std::size_t n)
{
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<MultiPoly> kronecker_factor(const MultiPoly& f, const FactorLimits& limits)
{
    Kronecker kr(f);
    if (kr.image_degree_bound() > limits.max_image_degree)
        throw DegreeLimitExceeded("Kronecker image degree " + std::to_string(kr.image_degree_bound()) +
                                  " exceeds limit " + std::to_string(limits.max_image_degree));
    const VarId t = VarId::x();
    FactorList uni = factor_univariate(kr.image(f, t), t);

    // expand multiplicities; equal factors share an id for deduplication
    std::vector<MultiPoly> pieces;
    std::vector<std::size_t> ids;
    for (std::size_t k = 0; k < uni.size(); ++k) {
        for (unsigned m = 0; m < uni[k].second; ++m) {
            pieces.push_back(uni[k].first);
            ids.push_back(k);
        }
    }

    std::vector<MultiPoly> result;
    MultiPoly rest = f;
    std::size_t s = 1;
    std::size_t budget = 0;
    while (2 * s <= pieces.size()) {
        bool found = false;
        std::set<std::vector<std::size_t>> tried;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        do {
            std::vector<std::size_t> key;
            for (std::size_t i : idx) key.push_back(ids[i]);
            if (!tried.insert(key).second) continue;
            if (++budget > 200000) throw DegreeLimitExceeded("Kronecker recombination budget exceeded");
            MultiPoly prod(1);
            for (std::size_t i : idx) prod *= pieces[i];
            auto candidate = kr.preimage(prod, t);
            if (!candidate || candidate->is_constant()) continue;
            if (auto q = divide(rest, *candidate)) {
                result.push_back(normalize(*candidate));
                rest = std::move(*q);
                std::vector<MultiPoly> np;
                std::vector<std::size_t> nid;
                for (std::size_t i = 0, j = 0; i < pieces.size(); ++i) {
                    if (j < idx.size() && idx[j] == i) {
                        ++j;
                        continue;
                    }
                    np.push_back(std::move(pieces[i]));
                    nid.push_back(ids[i]);
                }
                pieces = std::move(np);
                ids = std::move(nid);
                found = true;
                break;
            }
        } while (next_combination(idx, pieces.size()));
        if (!found) ++s;
    }
    if (!rest.is_constant()) result.push_back(normalize(rest));
    return result;
}

// Irreducible factors of a normalized, square-free, nonconstant polynomial.
void irreducible_parts(const MultiPoly& f, const FactorLimits& limits, std::vector<MultiPoly>& out)
{
    if (f.is_constant()) return;
    const auto vars = f.variables();
    if (f.total_degree() == 1) {
        out.push_back(f);
        return;
    }
    if (vars.size() == 1) {
        for (auto& [g, m] : factor_univariate(f, vars[0])) out.push_back(std::move(g));
        return;
    }
    for (VarId v : vars) {
        MultiPoly cont = content_in(f, v);
        if (!cont.is_constant()) {
            irreducible_parts(cont, limits, out);
            irreducible_parts(normalize(exact_quotient(f, cont)), limits, out);
            return;
        }
    }
    // primitive and linear in some variable: irreducible
    for (VarId v : vars) {
        if (f.degree(v) == 1) {
            out.push_back(f);
            return;
        }
    }
    if (f.total_degree() > limits.max_total_degree || vars.size() > limits.max_variables)
        throw DegreeLimitExceeded("factor: total degree " + std::to_string(f.total_degree()) + " in " +
                                  std::to_string(vars.size()) + " variables exceeds the configured bound");
    for (auto& g : kronecker_factor(f, limits)) out.push_back(std::move(g));
}

} // namespace

MultiPoly Factorization::expand() const
{
    MultiPoly r(unit);
    for (const auto& [f, m] : factors) r *= pow(f, m);
    return r;
}

Factorization squarefree(const MultiPoly& p)
{
    if (p.is_zero()) throw ArgumentError("squarefree of the zero polynomial");
    FactorList parts;
    squarefree_rec(normalize(p), parts);
    return finish(p, std::move(parts));
}

Factorization factor(const MultiPoly& p, const FactorLimits& limits)
{
    if (p.is_zero()) throw ArgumentError("factor of the zero polynomial");
    Factorization sqf = squarefree(p);
    FactorList all;
    for (const auto& [part, mult] : sqf.factors) {
        std::vector<MultiPoly> irr;
        irreducible_parts(part, limits, irr);
        for (auto& g : irr) all.emplace_back(std::move(g), mult);
    }
    return finish(p, std::move(all));
}

std::vector<MultiPoly> irreducible_factors(const MultiPoly& p, const FactorLimits& limits)
{
    std::vector<MultiPoly> out;
    if (p.is_zero() || p.is_constant()) return out;
    for (auto& [f, m] : factor(p, limits).factors) out.push_back(std::move(f));
    return out;
}

std::vector<Rational> rational_roots(const MultiPoly& p)
{
    if (p.is_zero()) throw ArgumentError("rational_roots of the zero polynomial");
    const auto vars = p.variables();
    if (vars.size() > 1) throw ArgumentError("rational_roots expects a univariate polynomial");
    std::vector<Rational> roots;
    if (vars.empty()) return roots;
    for (const auto& [f, m] : factor_univariate(p, vars[0])) {
        if (f.total_degree() != 1) continue;
        auto c = coefficients(f, vars[0]);
        roots.push_back(-c[0].constant_value() / c[1].constant_value());
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace intfac
