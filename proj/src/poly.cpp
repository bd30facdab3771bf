#include "intfac/poly.hpp"

#include "intfac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace intfac {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(VarId v, std::uint32_t e)
{
    Monomial m;
    if (e > 0) {
        m.factors_.push_back({v, e});
        m.degree_ = e;
    }
    return m;
}

std::uint32_t Monomial::degree(VarId v) const
{
    for (const auto& f : factors_) {
        if (f.var == v) return f.exp;
        if (f.var > v) break;
    }
    return 0;
}

std::optional<VarId> Monomial::max_var() const
{
    if (factors_.empty()) return std::nullopt;
    return factors_.back().var;
}

bool Monomial::divides(const Monomial& other) const
{
    if (degree_ > other.degree_) return false;
    auto it = other.factors_.begin();
    for (const auto& f : factors_) {
        while (it != other.factors_.end() && it->var < f.var) ++it;
        if (it == other.factors_.end() || it->var != f.var || it->exp < f.exp) return false;
    }
    return true;
}

Monomial Monomial::operator*(const Monomial& other) const
{
    Monomial r;
    r.degree_ = degree_ + other.degree_;
    auto a = factors_.begin();
    auto b = other.factors_.begin();
    while (a != factors_.end() || b != other.factors_.end()) {
        if (b == other.factors_.end() || (a != factors_.end() && a->var < b->var)) {
            r.factors_.push_back(*a++);
        } else if (a == factors_.end() || b->var < a->var) {
            r.factors_.push_back(*b++);
        } else {
            r.factors_.push_back({a->var, a->exp + b->exp});
            ++a;
            ++b;
        }
    }
    return r;
}

Monomial Monomial::quotient(const Monomial& divisor) const
{
    Monomial r;
    r.degree_ = degree_ - divisor.degree_;
    auto d = divisor.factors_.begin();
    for (const auto& f : factors_) {
        std::uint32_t e = f.exp;
        if (d != divisor.factors_.end() && d->var == f.var) {
            e -= d->exp;
            ++d;
        }
        if (e > 0) r.factors_.push_back({f.var, e});
    }
    return r;
}

Monomial Monomial::with(VarId v, std::uint32_t e) const
{
    Monomial r;
    bool placed = false;
    for (const auto& f : factors_) {
        if (!placed && f.var >= v) {
            placed = true;
            if (e > 0) r.factors_.push_back({v, e});
            if (f.var == v) continue;
        }
        r.factors_.push_back(f);
    }
    if (!placed && e > 0) r.factors_.push_back({v, e});
    r.degree_ = 0;
    for (const auto& f : r.factors_) r.degree_ += f.exp;
    return r;
}

std::size_t Monomial::hash() const
{
    std::size_t h = degree_ * 0x9E3779B97F4A7C15ull;
    for (const auto& f : factors_) {
        h ^= (static_cast<std::size_t>(f.var.index()) << 32 | f.exp) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    }
    return h;
}

int compare(const Monomial& a, const Monomial& b)
{
    if (a.degree_ != b.degree_) return a.degree_ < b.degree_ ? -1 : 1;
    auto ia = a.factors_.rbegin();
    auto ib = b.factors_.rbegin();
    while (ia != a.factors_.rend() && ib != b.factors_.rend()) {
        if (ia->var != ib->var) return ia->var > ib->var ? 1 : -1;
        if (ia->exp != ib->exp) return ia->exp > ib->exp ? 1 : -1;
        ++ia;
        ++ib;
    }
    if (ia != a.factors_.rend()) return 1;
    if (ib != b.factors_.rend()) return -1;
    return 0;
}

std::string Monomial::to_string() const
{
    std::string out;
    for (const auto& f : factors_) {
        if (!out.empty()) out += '*';
        out += f.var.name();
        if (f.exp != 1) out += "^" + std::to_string(f.exp);
    }
    return out.empty() ? "1" : out;
}

// --------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(const Rational& c)
{
    if (c != 0) terms_.push_back({Monomial(), c});
}

MultiPoly MultiPoly::var(VarId v, std::uint32_t e)
{
    return term(Monomial::of(v, e), 1);
}

MultiPoly MultiPoly::term(const Monomial& m, const Rational& c)
{
    MultiPoly p;
    if (c != 0) p.terms_.push_back({m, c});
    return p;
}

MultiPoly MultiPoly::from_sorted(std::vector<Term> terms)
{
    MultiPoly p;
    p.terms_ = std::move(terms);
    return p;
}

MultiPoly MultiPoly::from_terms(std::vector<Term> terms)
{
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return compare(a.mono, b.mono) > 0; });
    MultiPoly p;
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coeff += t.coeff;
        } else {
            if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
    return p;
}

Rational MultiPoly::constant_value() const
{
    if (terms_.empty()) return 0;
    const Term& last = terms_.back();
    return last.mono.is_one() ? last.coeff : Rational(0);
}

std::uint32_t MultiPoly::total_degree() const
{
    return terms_.empty() ? 0 : terms_.front().mono.degree();
}

std::uint32_t MultiPoly::degree(VarId v) const
{
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree(v));
    return d;
}

bool MultiPoly::depends_on(VarId v) const
{
    for (const auto& t : terms_)
        if (t.mono.degree(v) > 0) return true;
    return false;
}

std::vector<VarId> MultiPoly::variables() const
{
    std::vector<VarId> vars;
    for (const auto& t : terms_)
        for (const auto& f : t.mono.factors()) vars.push_back(f.var);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

MultiPoly MultiPoly::operator-() const
{
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

namespace {

MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract)
{
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    while (ia != a.terms().end() || ib != b.terms().end()) {
        int c;
        if (ia == a.terms().end()) c = -1;
        else if (ib == b.terms().end()) c = 1;
        else c = compare(ia->mono, ib->mono);
        if (c > 0) {
            out.push_back(*ia++);
        } else if (c < 0) {
            out.push_back({ib->mono, subtract ? Rational(-ib->coeff) : ib->coeff});
            ++ib;
        } else {
            Rational s = subtract ? Rational(ia->coeff - ib->coeff) : Rational(ia->coeff + ib->coeff);
            if (s != 0) out.push_back({ia->mono, std::move(s)});
            ++ia;
            ++ib;
        }
    }
    return MultiPoly::from_sorted(std::move(out));
}

} // namespace

MultiPoly& MultiPoly::operator+=(const MultiPoly& o)
{
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    *this = merge(*this, o, false);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o)
{
    if (o.is_zero()) return *this;
    *this = merge(*this, o, true);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o)
{
    *this = *this * o;
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
    } else {
        for (auto& t : terms_) t.coeff *= c;
    }
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_constant()) return b * a.constant_value();
    if (b.is_constant()) return a * b.constant_value();
    const MultiPoly& small = a.size() <= b.size() ? a : b;
    const MultiPoly& large = a.size() <= b.size() ? b : a;
    if (small.size() == 1) {
        MultiPoly r;
        const Term& s = small.terms_[0];
        r.terms_.reserve(large.size());
        // multiplying by a monomial preserves the term order
        for (const auto& t : large.terms_) r.terms_.push_back({t.mono * s.mono, t.coeff * s.coeff});
        return r;
    }
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(a.size() * b.size());
    Rational prod;
    for (const auto& s : small.terms_) {
        for (const auto& t : large.terms_) {
            prod = s.coeff * t.coeff;
            auto [it, inserted] = acc.try_emplace(s.mono * t.mono, prod);
            if (!inserted) it->second += prod;
        }
    }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) terms.push_back({m, std::move(c)});
    return MultiPoly::from_terms(std::move(terms));
}

bool operator==(const MultiPoly& a, const MultiPoly& b)
{
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    }
    return true;
}

std::string MultiPoly::to_string() const
{
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const Term& t = terms_[i];
        Rational c = t.coeff;
        bool negative = c < 0;
        if (negative) c = -c;
        if (i == 0) {
            if (negative) out += '-';
        } else {
            out += negative ? '-' : '+';
        }
        if (t.mono.is_one()) {
            out += c.get_str();
        } else {
            if (c != 1) out += c.get_str() + "*";
            out += t.mono.to_string();
        }
    }
    return out;
}

int compare(const MultiPoly& a, const MultiPoly& b)
{
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    for (std::size_t i = 0; i < ta.size() && i < tb.size(); ++i) {
        if (int c = compare(ta[i].mono, tb[i].mono); c != 0) return c;
        if (ta[i].coeff != tb[i].coeff) return ta[i].coeff < tb[i].coeff ? -1 : 1;
    }
    if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
    return 0;
}

MultiPoly pow(const MultiPoly& p, unsigned e)
{
    MultiPoly result(1);
    MultiPoly base = p;
    while (e > 0) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return result;
}

namespace {

// Arithmetic modulo the Mersenne prime 2^61 - 1.
constexpr std::uint64_t kMod = (std::uint64_t(1) << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b)
{
    unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(r & kMod);
    std::uint64_t hi = static_cast<std::uint64_t>(r >> 61);
    std::uint64_t s = lo + hi;
    return s >= kMod ? s - kMod : s;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e)
{
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a);
        a = mulmod(a, a);
        e >>= 1;
    }
    return r;
}

std::optional<std::uint64_t> reduce_mod(const Rational& c)
{
    static const Integer mod(std::to_string(kMod));
    Integer n = c.get_num() % mod;
    if (n < 0) n += mod;
    Integer d = c.get_den() % mod;
    if (d == 0) return std::nullopt;
    std::uint64_t nn = std::stoull(n.get_str());
    std::uint64_t dd = std::stoull(d.get_str());
    return mulmod(nn, powmod(dd, kMod - 2));
}

std::uint64_t point_value(VarId v)
{
    std::uint64_t h = 0x9e3779b97f4a7c15ULL * (v.index() + 1);
    h ^= h >> 29;
    return h % kMod;
}

// Univariate image in v over F_p with the other variables at fixed points.
std::optional<std::vector<std::uint64_t>> image_modp(const MultiPoly& p, VarId v)
{
    std::vector<std::uint64_t> out(p.degree(v) + 1, 0);
    for (const auto& t : p.terms()) {
        auto c = reduce_mod(t.coeff);
        if (!c) return std::nullopt;
        std::uint64_t val = *c;
        std::uint32_t dv = 0;
        for (const auto& f : t.mono.factors()) {
            if (f.var == v) dv = f.exp;
            else val = mulmod(val, powmod(point_value(f.var), f.exp));
        }
        std::uint64_t& slot = out[dv];
        slot += val;
        if (slot >= kMod) slot -= kMod;
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

// False only when q certainly does not divide p: a ring map to F_p[v]
// preserves exact divisibility whenever the image of q is nonzero.
bool may_divide(const MultiPoly& p, const MultiPoly& q)
{
    const VarId v = q.variables().back();
    auto pi = image_modp(p, v);
    auto qi = image_modp(normalize(q), v);
    if (!pi || !qi || qi->empty()) return true;
    if (qi->size() == 1) return true;
    auto& r = *pi;
    const auto& d = *qi;
    const std::uint64_t inv = powmod(d.back(), kMod - 2);
    const std::size_t dq = d.size() - 1;
    for (std::size_t i = r.size(); i-- > dq;) {
        if (r[i] == 0) continue;
        std::uint64_t f = mulmod(r[i], inv);
        for (std::size_t j = 0; j <= dq; ++j) {
            std::uint64_t sub = mulmod(f, d[j]);
            std::uint64_t& x = r[i - dq + j];
            x = x >= sub ? x - sub : x + kMod - sub;
        }
    }
    for (std::size_t i = 0; i < std::min(dq, r.size()); ++i)
        if (r[i] != 0) return false;
    return true;
}

} // namespace

std::optional<MultiPoly> divide(const MultiPoly& p, const MultiPoly& q)
{
    if (q.is_zero()) throw DivisionByZero("division by the zero polynomial");
    if (p.is_zero()) return MultiPoly();
    if (q.is_constant()) return p * (Rational(1) / q.constant_value());
    // cheap degree filter
    for (VarId v : q.variables())
        if (p.degree(v) < q.degree(v)) return std::nullopt;
    if (p.total_degree() < q.total_degree()) return std::nullopt;
    if (p.size() > 8 && !may_divide(p, q)) return std::nullopt;

    const Term& lead = q.leading();
    const Rational inv_lead = Rational(1) / lead.coeff;
    std::map<Monomial, Rational, MonomialGreater> rem;
    for (const auto& t : p.terms()) rem.emplace_hint(rem.end(), t.mono, t.coeff);
    std::vector<Term> quot;
    while (!rem.empty()) {
        auto top = rem.begin();
        if (!lead.mono.divides(top->first)) return std::nullopt;
        Term t{top->first.quotient(lead.mono), top->second * inv_lead};
        rem.erase(top);
        for (std::size_t j = 1; j < q.terms().size(); ++j) {
            const Term& qt = q.terms()[j];
            Rational val = t.coeff * qt.coeff;
            auto [pos, inserted] = rem.try_emplace(t.mono * qt.mono);
            if (inserted) {
                pos->second = -val;
            } else {
                pos->second -= val;
                if (pos->second == 0) rem.erase(pos);
            }
        }
        quot.push_back(std::move(t));
    }
    return MultiPoly::from_sorted(std::move(quot));
}

MultiPoly exact_quotient(const MultiPoly& p, const MultiPoly& q)
{
    auto r = divide(p, q);
    if (!r) throw ArgumentError("exact_quotient: " + q.to_string() + " does not divide " + p.to_string());
    return std::move(*r);
}

MultiPoly derivative(const MultiPoly& p, VarId v)
{
    std::vector<Term> terms;
    for (const auto& t : p.terms()) {
        std::uint32_t e = t.mono.degree(v);
        if (e == 0) continue;
        terms.push_back({t.mono.with(v, e - 1), t.coeff * e});
    }
    return MultiPoly::from_terms(std::move(terms));
}

std::vector<MultiPoly> coefficients(const MultiPoly& p, VarId v)
{
    std::vector<std::vector<Term>> buckets(p.degree(v) + 1);
    for (const auto& t : p.terms()) {
        std::uint32_t e = t.mono.degree(v);
        buckets[e].push_back({t.mono.without(v), t.coeff});
    }
    std::vector<MultiPoly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(MultiPoly::from_terms(std::move(b)));
    return out;
}

MultiPoly from_coefficients(std::span<const MultiPoly> coeffs, VarId v)
{
    std::vector<Term> terms;
    for (std::size_t e = 0; e < coeffs.size(); ++e) {
        for (const auto& t : coeffs[e].terms()) {
            terms.push_back({e == 0 ? t.mono : t.mono * Monomial::of(v, static_cast<std::uint32_t>(e)), t.coeff});
        }
    }
    return MultiPoly::from_terms(std::move(terms));
}

MultiPoly leading_coeff_in(const MultiPoly& p, VarId v)
{
    std::uint32_t d = p.degree(v);
    std::vector<Term> terms;
    for (const auto& t : p.terms())
        if (t.mono.degree(v) == d) terms.push_back({t.mono.without(v), t.coeff});
    return MultiPoly::from_terms(std::move(terms));
}

MultiPoly substitute(const MultiPoly& p, VarId v, const MultiPoly& value)
{
    if (!p.depends_on(v)) return p;
    auto coeffs = coefficients(p, v);
    // Horner
    MultiPoly r = coeffs.back();
    for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
        r = r * value;
        r += coeffs[i];
    }
    return r;
}

MultiPoly evaluate(const MultiPoly& p, VarId v, const Rational& value)
{
    std::vector<Term> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) {
        std::uint32_t e = t.mono.degree(v);
        if (e == 0) {
            terms.push_back(t);
        } else {
            terms.push_back({t.mono.without(v), t.coeff * pow(value, e)});
        }
    }
    return MultiPoly::from_terms(std::move(terms));
}

double evaluate_double(const MultiPoly& p, const std::function<double(VarId)>& point)
{
    double sum = 0;
    for (const auto& t : p.terms()) {
        double term = t.coeff.get_d();
        for (const auto& f : t.mono.factors()) term *= std::pow(point(f.var), static_cast<double>(f.exp));
        sum += term;
    }
    return sum;
}

std::map<Monomial, MultiPoly, MonomialGreater> split_by(const MultiPoly& p,
                                                        const std::function<bool(VarId)>& keep)
{
    std::map<Monomial, std::vector<Term>, MonomialGreater> buckets;
    for (const auto& t : p.terms()) {
        Monomial kept;
        Monomial rest;
        for (const auto& f : t.mono.factors()) {
            if (keep(f.var)) kept = kept * Monomial::of(f.var, f.exp);
            else rest = rest * Monomial::of(f.var, f.exp);
        }
        buckets[kept].push_back({rest, t.coeff});
    }
    std::map<Monomial, MultiPoly, MonomialGreater> out;
    for (auto& [m, terms] : buckets) out.emplace(m, MultiPoly::from_terms(std::move(terms)));
    return out;
}

Rational unit_content(const MultiPoly& p)
{
    if (p.is_zero()) return 1;
    Integer num_gcd = 0;
    Integer den_lcm = 1;
    for (const auto& t : p.terms()) {
        num_gcd = gcd(num_gcd, Integer(t.coeff.get_num()));
        den_lcm = lcm(den_lcm, Integer(t.coeff.get_den()));
    }
    Rational u(num_gcd, den_lcm);
    u.canonicalize();
    if (p.leading_coeff() < 0) u = -u;
    return u;
}

MultiPoly normalize(const MultiPoly& p)
{
    if (p.is_zero()) return p;
    Rational u = unit_content(p);
    if (u == 1) return p;
    return p * (Rational(1) / u);
}

} // namespace intfac
