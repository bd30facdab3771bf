#include "intfac/algebra.hpp"

#include "intfac/errors.hpp"

#include <algorithm>
#include <optional>
#include <random>

namespace intfac {

namespace {

using Coeffs = std::vector<MultiPoly>;

int deg(const Coeffs& c) { return static_cast<int>(c.size()) - 1; }

void trim(Coeffs& c)
{
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

Coeffs prem(const Coeffs& a, const Coeffs& b)
{
    Coeffs r = a;
    const int n = deg(b);
    const MultiPoly& lb = b.back();
    int e = deg(a) - n + 1;
    while (!r.empty() && deg(r) >= n) {
        const int shift = deg(r) - n;
        MultiPoly lr = r.back();
        for (auto& c : r) c *= lb;
        for (int i = 0; i <= n; ++i) r[i + shift] -= lr * b[i];
        trim(r);
        --e;
    }
    if (e > 0 && !r.empty()) {
        MultiPoly factor = pow(lb, static_cast<unsigned>(e));
        for (auto& c : r) c *= factor;
    }
    return r;
}

// Runs the subresultant PRS on a, b (deg a >= deg b >= 1). Returns the last
// nonzero element; `resultant` receives the resultant when it is nonzero.
struct PrsResult {
    Coeffs last;
    MultiPoly resultant;
};

PrsResult subresultant_prs(Coeffs a, Coeffs b)
{
    MultiPoly g(1);
    MultiPoly h(1);
    Rational sign = 1;
    for (;;) {
        const int da = deg(a);
        const int db = deg(b);
        const int delta = da - db;
        if ((da & 1) && (db & 1)) sign = -sign;
        Coeffs r = prem(a, b);
        if (r.empty()) return {std::move(b), MultiPoly()};
        MultiPoly divisor = g * pow(h, static_cast<unsigned>(delta));
        for (auto& c : r) c = exact_quotient(c, divisor);
        a = std::move(b);
        b = std::move(r);
        g = a.back();
        if (delta == 1) {
            h = g;
        } else if (delta > 1) {
            h = exact_quotient(pow(g, static_cast<unsigned>(delta)), pow(h, static_cast<unsigned>(delta - 1)));
        }
        if (deg(b) == 0) {
            const int dA = deg(a);
            MultiPoly res = dA == 1 ? b[0]
                                    : exact_quotient(pow(b[0], static_cast<unsigned>(dA)),
                                                     pow(h, static_cast<unsigned>(dA - 1)));
            return {std::move(b), res * sign};
        }
    }
}

MultiPoly gcd_rec(const MultiPoly& p, const MultiPoly& q);

MultiPoly gcd_with_all(MultiPoly g, const Coeffs& coeffs)
{
    // smallest coefficients first so the running gcd collapses quickly
    std::vector<const MultiPoly*> order;
    for (const auto& c : coeffs)
        if (!c.is_zero()) order.push_back(&c);
    std::sort(order.begin(), order.end(), [](const MultiPoly* a, const MultiPoly* b) { return a->size() < b->size(); });
    for (const MultiPoly* c : order) {
        if (g.is_constant() && !g.is_zero()) return MultiPoly(1);
        g = gcd_rec(g, *c);
    }
    return g;
}

Integer max_norm(const MultiPoly& p)
{
    Integer m = 0;
    for (const auto& t : p.terms())
        if (abs(t.coeff.get_num()) > m) m = abs(t.coeff.get_num());
    return m;
}

// Inverse of evaluating v at xi, reading each integer coefficient of h in
// the symmetric residue system base xi.
std::optional<MultiPoly> xi_adic(MultiPoly h, const Integer& xi, VarId v)
{
    MultiPoly g;
    const Integer half = xi / 2;
    for (std::uint32_t i = 0; !h.is_zero(); ++i) {
        if (i > 4096) return std::nullopt;
        std::vector<Term> digit;
        for (const auto& t : h.terms()) {
            Integer r;
            mpz_fdiv_r(r.get_mpz_t(), t.coeff.get_num_mpz_t(), xi.get_mpz_t());
            if (r > half) r -= xi;
            if (r != 0) digit.push_back({t.mono, Rational(r)});
        }
        MultiPoly d = MultiPoly::from_sorted(std::move(digit));
        g += d * MultiPoly::var(v, i);
        h -= d;
        std::vector<Term> rest;
        for (const auto& t : h.terms()) {
            Integer q;
            mpz_divexact(q.get_mpz_t(), t.coeff.get_num_mpz_t(), xi.get_mpz_t());
            rest.push_back({t.mono, Rational(q)});
        }
        h = MultiPoly::from_sorted(std::move(rest));
    }
    return g;
}

// Heuristic gcd over Z by evaluation at large integers; nullopt when the
// attempts run out. Inputs have integer coefficients.
std::optional<MultiPoly> heu_gcd(const MultiPoly& a, const MultiPoly& b)
{
    if (a.is_constant() && b.is_constant()) {
        Integer g = gcd(Integer(a.constant_value().get_num()), Integer(b.constant_value().get_num()));
        return MultiPoly(Rational(abs(g)));
    }
    VarId v = a.is_constant() ? b.variables().back() : a.variables().back();
    if (!b.is_constant()) v = std::max(v, b.variables().back());
    const Integer ka = abs(unit_content(a).get_num()), kb = abs(unit_content(b).get_num());
    const Integer k = gcd(ka, kb);
    if (ka != 1 || kb != 1) {
        auto h = heu_gcd(a * Rational(Integer(1), ka), b * Rational(Integer(1), kb));
        if (!h) return std::nullopt;
        return *h * Rational(k);
    }
    const Integer na = max_norm(a), nb = max_norm(b);
    // xi >= 2*min(|a|, |b|) + 2 makes a candidate dividing both the gcd
    Integer xi = 2 * std::min(na, nb) + 29;
    for (int attempt = 0; attempt < 6; ++attempt) {
        MultiPoly ea = evaluate(a, v, Rational(xi));
        MultiPoly eb = evaluate(b, v, Rational(xi));
        if (!ea.is_zero() && !eb.is_zero()) {
            auto h = heu_gcd(ea, eb);
            if (!h) return std::nullopt;
            if (auto g = xi_adic(*h, xi, v); g && !g->is_zero()) {
                MultiPoly cand = normalize(*g);
                if (divide(a, cand) && divide(b, cand)) return cand;
            }
        }
        xi = 73794 * xi * Integer(sqrt(Integer(sqrt(xi)))) / 27011;
    }
    return std::nullopt;
}

// Sound test for deg_v gcd(a, b) = 0: specializing the other variables at a
// point where both leading coefficients survive can only raise the degree of
// the gcd, so a constant univariate gcd settles it. False means "unknown".
bool coprime_in(const MultiPoly& a, const MultiPoly& b, VarId v)
{
    std::vector<VarId> others;
    for (VarId w : a.variables())
        if (w != v) others.push_back(w);
    for (VarId w : b.variables())
        if (w != v && std::find(others.begin(), others.end(), w) == others.end()) others.push_back(w);
    if (others.empty()) return false;
    std::mt19937_64 rng(0x9cd);
    const MultiPoly la = leading_coeff_in(a, v), lb = leading_coeff_in(b, v);
    for (int attempt = 0; attempt < 4; ++attempt) {
        MultiPoly sa = a, sb = b, ea = la, eb = lb;
        for (VarId w : others) {
            Rational val(static_cast<long>(rng() % 201) - 100);
            sa = evaluate(sa, w, val);
            sb = evaluate(sb, w, val);
            ea = evaluate(ea, w, val);
            eb = evaluate(eb, w, val);
        }
        if (ea.is_zero() || eb.is_zero()) continue;
        return gcd_rec(sa, sb).is_constant();
    }
    return false;
}

MultiPoly gcd_rec(const MultiPoly& p, const MultiPoly& q)
{
    if (p.is_zero()) return normalize(q);
    if (q.is_zero()) return normalize(p);
    if (p.is_constant() || q.is_constant()) return MultiPoly(1);
    MultiPoly a = normalize(p);
    MultiPoly b = normalize(q);
    if (a == b) return a;
    if (a.size() > b.size()) std::swap(a, b);
    if (divide(b, a)) return a;

    auto va = a.variables();
    auto vb = b.variables();
    const VarId v = std::max(va.back(), vb.back());
    if (!a.depends_on(v)) return gcd_with_all(a, coefficients(b, v));
    if (!b.depends_on(v)) return gcd_with_all(b, coefficients(a, v));

    MultiPoly ca = content_in(a, v);
    MultiPoly cb = content_in(b, v);
    MultiPoly cont = gcd_rec(ca, cb);
    MultiPoly pa = exact_quotient(a, ca);
    MultiPoly pb = exact_quotient(b, cb);
    if (coprime_in(pa, pb, v)) return normalize(cont);
    if (auto h = heu_gcd(normalize(pa), normalize(pb))) return normalize(cont * *h);
    Coeffs ac = coefficients(pa, v);
    Coeffs bc = coefficients(pb, v);
    if (deg(ac) < deg(bc)) std::swap(ac, bc);
    PrsResult prs = subresultant_prs(std::move(ac), std::move(bc));
    MultiPoly prim(1);
    if (prs.resultant.is_zero() && deg(prs.last) > 0) {
        prim = primitive_part_in(from_coefficients(prs.last, v), v);
    }
    return normalize(cont * prim);
}

} // namespace

MultiPoly gcd(const MultiPoly& p, const MultiPoly& q) { return gcd_rec(p, q); }

MultiPoly content_in(const MultiPoly& p, VarId v)
{
    if (p.is_zero()) return MultiPoly();
    return gcd_with_all(MultiPoly(), coefficients(p, v));
}

MultiPoly primitive_part_in(const MultiPoly& p, VarId v)
{
    if (p.is_zero()) return p;
    return normalize(exact_quotient(p, content_in(p, v)));
}

MultiPoly pseudo_remainder(const MultiPoly& p, const MultiPoly& q, VarId v)
{
    if (q.is_zero()) throw DivisionByZero("pseudo_remainder by zero");
    Coeffs a = coefficients(p, v);
    Coeffs b = coefficients(q, v);
    trim(a);
    if (a.empty() || deg(a) < deg(b)) return p;
    return from_coefficients(prem(a, b), v);
}

MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, VarId v)
{
    if (p.is_zero() || q.is_zero()) return MultiPoly();
    const unsigned m = p.degree(v);
    const unsigned n = q.degree(v);
    if (m == 0) return pow(p, n);
    if (n == 0) return pow(q, m);
    Coeffs a = coefficients(p, v);
    Coeffs b = coefficients(q, v);
    Rational sign = 1;
    if (m < n) {
        std::swap(a, b);
        if ((m & 1) && (n & 1)) sign = -1;
    }
    return subresultant_prs(std::move(a), std::move(b)).resultant * sign;
}

MultiPoly repeated_resultant(const MultiPoly& f, std::span<const MultiPoly> chain, std::span<const VarId> vars)
{
    if (chain.empty()) throw ArgumentError("repeated_resultant: empty chain");
    if (vars.size() != chain.size())
        throw ArgumentError("repeated_resultant: expected " + std::to_string(chain.size()) + " variables, got " +
                            std::to_string(vars.size()));
    const MultiPoly& last = chain.back();
    const VarId z = vars.front();
    MultiPoly reduced = resultant(f, last, z);
    if (chain.size() == 1) return reduced;
    std::vector<MultiPoly> rest;
    rest.reserve(chain.size() - 1);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) rest.push_back(resultant(chain[i], last, z));
    return repeated_resultant(reduced, rest, vars.subspan(1));
}

} // namespace intfac
