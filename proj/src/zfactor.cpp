#include "zfactor.hpp"

#include "intfac/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>

namespace intfac::detail {

namespace {

// ------------------------------------------------------------ F_p[x]

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;

struct Field {
    u64 p;

    u64 add(u64 a, u64 b) const { return (a + b) % p; }
    u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
    u64 mul(u64 a, u64 b) const { return (a * b) % p; }
    u64 pow(u64 a, u64 e) const
    {
        u64 r = 1;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const { return pow(a, p - 2); }
};

void trim(ModPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

ModPoly mul(const Field& F, const ModPoly& a, const ModPoly& b)
{
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % F.p;
    }
    trim(r);
    return r;
}

ModPoly sub(const Field& F, ModPoly a, const ModPoly& b)
{
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
    trim(a);
    return a;
}

// a = q*b + r
void divmod(const Field& F, const ModPoly& a, const ModPoly& b, ModPoly* q, ModPoly* r)
{
    ModPoly rem = a;
    const int db = deg(b);
    const u64 inv_lb = F.inv(b.back());
    ModPoly quot(std::max(0, deg(a) - db + 1), 0);
    while (!rem.empty() && deg(rem) >= db) {
        const int shift = deg(rem) - db;
        const u64 c = F.mul(rem.back(), inv_lb);
        quot[shift] = c;
        for (int i = 0; i <= db; ++i) rem[i + shift] = F.sub(rem[i + shift], F.mul(c, b[i]));
        trim(rem);
    }
    trim(quot);
    if (q) *q = std::move(quot);
    if (r) *r = std::move(rem);
}

ModPoly mod(const Field& F, const ModPoly& a, const ModPoly& b)
{
    ModPoly r;
    divmod(F, a, b, nullptr, &r);
    return r;
}

ModPoly monic(const Field& F, ModPoly a)
{
    if (a.empty()) return a;
    const u64 inv = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, inv);
    return a;
}

ModPoly gcd(const Field& F, ModPoly a, ModPoly b)
{
    while (!b.empty()) {
        ModPoly r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

// s*a + t*b = 1 for coprime a, b; deg s < deg b, deg t < deg a.
void ext_gcd(const Field& F, const ModPoly& a, const ModPoly& b, ModPoly* s, ModPoly* t)
{
    ModPoly r0 = a, r1 = b;
    ModPoly s0{1}, s1{};
    ModPoly t0{}, t1{1};
    while (!r1.empty()) {
        ModPoly q, r;
        divmod(F, r0, r1, &q, &r);
        ModPoly s2 = sub(F, s0, mul(F, q, s1));
        ModPoly t2 = sub(F, t0, mul(F, q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // r0 is a nonzero constant
    const u64 inv = F.inv(r0[0]);
    for (auto& c : s0) c = F.mul(c, inv);
    for (auto& c : t0) c = F.mul(c, inv);
    *s = std::move(s0);
    *t = std::move(t0);
}

ModPoly mulmod(const Field& F, const ModPoly& a, const ModPoly& b, const ModPoly& m)
{
    return mod(F, mul(F, a, b), m);
}

ModPoly powmod(const Field& F, ModPoly base, u64 e, const ModPoly& m)
{
    ModPoly r{1};
    base = mod(F, base, m);
    while (e) {
        if (e & 1) r = mulmod(F, r, base, m);
        e >>= 1;
        if (e) base = mulmod(F, base, base, m);
    }
    return r;
}

ModPoly derivative(const Field& F, const ModPoly& a)
{
    ModPoly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(F.mul(a[i], i % F.p));
    trim(r);
    return r;
}

// Frobenius map a -> a^p modulo f, as the matrix of x^(p*j) mod f.
class Frobenius {
public:
    Frobenius(const Field& F, const ModPoly& f) : F_(F), f_(f)
    {
        const int n = deg(f);
        ModPoly xp = powmod(F, ModPoly{0, 1}, F.p, f);
        rows_.reserve(n);
        ModPoly cur{1};
        for (int j = 0; j < n; ++j) {
            rows_.push_back(cur);
            cur = mulmod(F, cur, xp, f);
        }
    }

    ModPoly apply(const ModPoly& a) const
    {
        ModPoly r(std::max(1, deg(f_)), 0);
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (a[j] == 0) continue;
            const ModPoly& row = rows_[j];
            for (std::size_t i = 0; i < row.size(); ++i) r[i] = (r[i] + a[j] * row[i]) % F_.p;
        }
        trim(r);
        return r;
    }

private:
    Field F_;
    ModPoly f_;
    std::vector<ModPoly> rows_;
};

struct DegreeBlock {
    ModPoly product; // product of all irreducible factors of degree d
    int d;
};

std::vector<DegreeBlock> distinct_degree(const Field& F, ModPoly f)
{
    std::vector<DegreeBlock> out;
    Frobenius frob(F, f);
    const ModPoly x{0, 1};
    ModPoly h = x; // x^(p^i) mod original f
    for (int i = 1; 2 * i <= deg(f); ++i) {
        h = frob.apply(h);
        ModPoly g = gcd(F, f, sub(F, mod(F, h, f), x));
        if (deg(g) > 0) {
            out.push_back({g, i});
            ModPoly q;
            divmod(F, f, g, &q, nullptr);
            f = std::move(q);
        }
    }
    if (deg(f) > 0) out.push_back({f, deg(f)});
    return out;
}

void equal_degree(const Field& F, const Frobenius& frob, const ModPoly& g, int d, std::mt19937_64& rng,
                  std::vector<ModPoly>& out)
{
    const int n = deg(g);
    if (n == d) {
        out.push_back(g);
        return;
    }
    for (;;) {
        ModPoly a(n);
        for (auto& c : a) c = rng() % F.p;
        trim(a);
        if (deg(a) < 1) continue;
        // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
        ModPoly norm = mod(F, a, g);
        ModPoly conj = norm;
        for (int i = 1; i < d; ++i) {
            conj = mod(F, frob.apply(conj), g);
            norm = mulmod(F, norm, conj, g);
        }
        ModPoly b = powmod(F, norm, (F.p - 1) / 2, g);
        b = sub(F, b, ModPoly{1});
        ModPoly u = gcd(F, g, b);
        if (deg(u) > 0 && deg(u) < n) {
            ModPoly v;
            divmod(F, g, u, &v, nullptr);
            equal_degree(F, frob, u, d, rng, out);
            equal_degree(F, frob, monic(F, v), d, rng, out);
            return;
        }
    }
}

// ------------------------------------------------------------ Z[x], Z/m[x]

void trim(ZPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

Integer modulo(const Integer& a, const Integer& m)
{
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

ZPoly reduce(ZPoly a, const Integer& m)
{
    for (auto& c : a) c = modulo(c, m);
    trim(a);
    return a;
}

ZPoly symmetric(ZPoly a, const Integer& m)
{
    const Integer half = m / 2;
    for (auto& c : a) {
        c = modulo(c, m);
        if (c > half) c -= m;
    }
    trim(a);
    return a;
}

ZPoly mul(const ZPoly& a, const ZPoly& b)
{
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

ZPoly mul_mod(const ZPoly& a, const ZPoly& b, const Integer& m) { return reduce(mul(a, b), m); }

ZPoly add(ZPoly a, const ZPoly& b)
{
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    trim(a);
    return a;
}

ZPoly sub(ZPoly a, const ZPoly& b)
{
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

// Division by a monic polynomial modulo m.
void divmod_monic(const ZPoly& a, const ZPoly& h, const Integer& m, ZPoly* q, ZPoly* r)
{
    ZPoly rem = reduce(a, m);
    const int dh = deg(h);
    ZPoly quot(std::max(0, deg(rem) - dh + 1), 0);
    while (!rem.empty() && deg(rem) >= dh) {
        const int shift = deg(rem) - dh;
        Integer c = rem.back();
        quot[shift] = c;
        for (int i = 0; i <= dh; ++i) rem[i + shift] = modulo(rem[i + shift] - c * h[i], m);
        trim(rem);
    }
    trim(quot);
    if (q) *q = std::move(quot);
    if (r) *r = std::move(rem);
}

ZPoly from_mod(const ModPoly& a)
{
    ZPoly r;
    r.reserve(a.size());
    for (u64 c : a) r.emplace_back(static_cast<unsigned long>(c));
    trim(r);
    return r;
}

ModPoly to_mod(const ZPoly& a, u64 p)
{
    ModPoly r;
    r.reserve(a.size());
    Integer P(static_cast<unsigned long>(p));
    for (const auto& c : a) r.push_back(modulo(c, P).get_ui());
    trim(r);
    return r;
}

std::optional<ZPoly> exact_div(const ZPoly& a, const ZPoly& b)
{
    ZPoly rem = a;
    const int db = deg(b);
    if (deg(a) < db) return rem.empty() ? std::optional<ZPoly>(ZPoly{}) : std::nullopt;
    ZPoly quot(deg(a) - db + 1, 0);
    while (!rem.empty() && deg(rem) >= db) {
        const int shift = deg(rem) - db;
        if (!mpz_divisible_p(rem.back().get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
        Integer c = rem.back() / b.back();
        quot[shift] = c;
        for (int i = 0; i <= db; ++i) rem[i + shift] -= c * b[i];
        trim(rem);
    }
    if (!rem.empty()) return std::nullopt;
    trim(quot);
    return quot;
}

ZPoly primitive(ZPoly a)
{
    Integer g = 0;
    for (const auto& c : a) g = gcd(g, c);
    if (g == 0) return a;
    if (a.back() < 0) g = -g;
    for (auto& c : a) c /= g;
    return a;
}

// One quadratic Hensel step (von zur Gathen & Gerhard, Alg. 15.10): from
// f = g*h, s*g + t*h = 1 modulo m to modulo M, where m | M | m^2.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Integer& M)
{
    ZPoly e = reduce(sub(f, mul(g, h)), M);
    ZPoly q, r;
    divmod_monic(mul_mod(s, e, M), h, M, &q, &r);
    ZPoly g2 = reduce(add(add(g, mul(t, e)), mul(q, g)), M);
    ZPoly h2 = reduce(add(h, r), M);
    ZPoly b = reduce(sub(add(mul(s, g2), mul(t, h2)), ZPoly{1}), M);
    ZPoly c, d;
    divmod_monic(mul_mod(s, b, M), h2, M, &c, &d);
    s = reduce(sub(s, d), M);
    t = reduce(sub(sub(t, mul(t, b)), mul(c, g2)), M);
    g = std::move(g2);
    h = std::move(h2);
}

ZPoly make_monic(const ZPoly& a, const Integer& m)
{
    Integer inv;
    mpz_invert(inv.get_mpz_t(), a.back().get_mpz_t(), m.get_mpz_t());
    ZPoly r = a;
    for (auto& c : r) c = modulo(c * inv, m);
    return r;
}

// Lifts f = lc(f) * prod(factors) mod p to mod p^k. Returns monic lifts.
std::vector<ZPoly> multifactor_lift(const ZPoly& f, const std::vector<ModPoly>& factors, const Field& F,
                                    const Integer& pk)
{
    if (factors.size() == 1) return {make_monic(reduce(f, pk), pk)};
    const std::size_t half = factors.size() / 2;
    std::vector<ModPoly> left(factors.begin(), factors.begin() + half);
    std::vector<ModPoly> right(factors.begin() + half, factors.end());
    ModPoly g0{F.mul(to_mod(ZPoly{f.back()}, F.p).at(0), 1)};
    for (const auto& l : left) g0 = mul(F, g0, l);
    ModPoly h0{1};
    for (const auto& r : right) h0 = mul(F, h0, r);
    ModPoly s0, t0;
    ext_gcd(F, g0, h0, &s0, &t0);

    ZPoly g = from_mod(g0), h = from_mod(h0), s = from_mod(s0), t = from_mod(t0);
    Integer m(static_cast<unsigned long>(F.p));
    while (m < pk) {
        Integer M = m * m;
        if (M > pk) M = pk;
        hensel_step(f, g, h, s, t, M);
        m = M;
    }
    auto lifted_left = multifactor_lift(g, left, F, pk);
    auto lifted_right = multifactor_lift(h, right, F, pk);
    lifted_left.insert(lifted_left.end(), lifted_right.begin(), lifted_right.end());
    return lifted_left;
}

bool is_prime(u64 n)
{
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Integer isqrt(const Integer& n)
{
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// Enumerates k-subsets of {0..n-1} in lexicographic order.
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

} // namespace

std::vector<ZPoly> factor_squarefree(const ZPoly& input)
{
    ZPoly f = input;
    const int n = deg(f);
    if (n <= 1) return {f};

    // choose the prime with the fewest modular factors among a few candidates
    std::optional<Field> best;
    std::vector<DegreeBlock> best_blocks;
    std::size_t best_count = 0;
    int tried = 0;
    for (u64 p = 32771; tried < 5 && p < 200000; p += 2) {
        if (!is_prime(p)) continue;
        Field F{p};
        ModPoly fp = to_mod(f, p);
        if (deg(fp) != n) continue;
        if (deg(gcd(F, fp, derivative(F, fp))) != 0) continue;
        ++tried;
        auto blocks = distinct_degree(F, monic(F, fp));
        std::size_t count = 0;
        for (const auto& b : blocks) count += deg(b.product) / b.d;
        if (!best || count < best_count) {
            best = F;
            best_blocks = std::move(blocks);
            best_count = count;
        }
        if (count == 1) break;
    }
    if (!best) throw DegreeLimitExceeded("no suitable prime for univariate factorization");
    if (best_count == 1) return {f};

    const Field F = *best;
    std::vector<ModPoly> modular;
    {
        std::mt19937_64 rng(0x5eedull + n);
        Frobenius frob(F, monic(F, to_mod(f, F.p)));
        for (const auto& b : best_blocks) equal_degree(F, frob, b.product, b.d, rng, modular);
    }

    // coefficient bound for lc(f) * (any factor of f)
    Integer norm2 = 0;
    for (const auto& c : f) norm2 += c * c;
    Integer bound = (isqrt(norm2) + 1) * pow(Integer(2), static_cast<unsigned>(n)) * abs(f.back());
    Integer P(static_cast<unsigned long>(F.p));
    Integer pk = P;
    while (pk <= 2 * bound) pk *= P;

    std::vector<ZPoly> lifted = multifactor_lift(f, modular, F, pk);

    std::vector<ZPoly> result;
    std::size_t s = 1;
    std::size_t combos_tried = 0;
    while (2 * s <= lifted.size()) {
        bool found = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        do {
            if (++combos_tried > 2000000) throw DegreeLimitExceeded("factor recombination budget exceeded");
            const Integer& lc = f.back();
            // constant-term test
            if (f.front() != 0) {
                Integer c0 = lc;
                for (std::size_t i : idx) c0 = modulo(c0 * (lifted[i].empty() ? Integer(0) : lifted[i][0]), pk);
                if (c0 > pk / 2) c0 -= pk;
                if (c0 == 0) continue;
                Integer target = lc * f.front();
                if (!mpz_divisible_p(target.get_mpz_t(), c0.get_mpz_t())) continue;
            }
            ZPoly g{lc};
            for (std::size_t i : idx) g = mul_mod(g, lifted[i], pk);
            g = primitive(symmetric(g, pk));
            if (auto q = exact_div(f, g)) {
                result.push_back(g);
                f = std::move(*q);
                std::vector<ZPoly> rest;
                for (std::size_t i = 0, j = 0; i < lifted.size(); ++i) {
                    if (j < idx.size() && idx[j] == i) {
                        ++j;
                        continue;
                    }
                    rest.push_back(std::move(lifted[i]));
                }
                lifted = std::move(rest);
                found = true;
                break;
            }
        } while (next_combination(idx, lifted.size()));
        if (!found) ++s;
    }
    if (deg(f) > 0) result.push_back(primitive(f));
    return result;
}

} // namespace intfac::detail
