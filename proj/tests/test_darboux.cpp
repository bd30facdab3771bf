#include "support.hpp"

#include "intfac/darboux.hpp"
#include "intfac/errors.hpp"
#include "intfac/integrals.hpp"
#include "intfac/pipeline.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

using namespace intfac;
using testsupport::P;

namespace {

const char* kRef = "y'' = (y'^3 + y'*(x-2) - y)/(y'^2 + (2*y'-1)*(x+y) - x)";

std::set<std::string> names(const std::vector<DarbouxCandidate>& cs)
{
    std::set<std::string> out;
    for (const auto& c : cs) out.insert(c.P.to_string());
    return out;
}

// L*P = B*D(P) + A*dP/dy_{n-1}, recomputed from scratch
bool cofactor_identity(const DarbouxCandidate& c, const OdeSystem& ode)
{
    if (!c.cofactor) return false;
    const MultiPoly rhs = ode.B * d_apply(c.P, ode.n) + ode.A * derivative(c.P, ode.top());
    return *c.cofactor * c.P == rhs;
}

void check_all(const std::vector<DarbouxCandidate>& cs, const OdeSystem& ode)
{
    for (const auto& c : cs) {
        INFO(c.P.to_string());
        if (c.cofactor) {
            CHECK(cofactor_identity(c, ode));
        } else {
            CHECK(structural_candidate(c.P, ode));
        }
        CHECK(normalize(c.P) == c.P);
        CHECK(irreducible_factors(c.P).size() == 1);
    }
}

std::vector<VarId> space(const OdeSystem& ode)
{
    std::vector<VarId> vs{VarId::x()};
    for (unsigned j = 0; j < ode.n; ++j) vs.push_back(VarId::y(j));
    return vs;
}

} // namespace

TEST_CASE("darboux_test examples")
{
    const OdeSystem yy = parse_ode("y' = y");
    auto l = darboux_test(P("y0"), yy);
    REQUIRE(l);
    CHECK(*l == MultiPoly(1));
    CHECK_FALSE(darboux_test(P("y0-1"), yy));

    const OdeSystem ref = parse_ode(kRef);
    auto l1 = darboux_test(P("y1^2-2*y1-y0"), ref);
    auto l2 = darboux_test(P("y1+y0+x"), ref);
    REQUIRE(l1);
    REQUIRE(l2);
    CHECK(*l1 == P("2*y1^2+y1-2"));
    CHECK(*l2 == P("2*y1^2+y1-2"));
}

TEST_CASE("trivial_candidates examples")
{
    const OdeSystem yx = parse_ode("y' = y/x");
    auto t = trivial_candidates(yx);
    CHECK(names(t) == std::set<std::string>{"x", "y0"});
    check_all(t, yx);

    const OdeSystem q = parse_ode("y'' = (y'*x)/(y*(y'-1))");
    t = trivial_candidates(q);
    CHECK(names(t) == std::set<std::string>{"y1", "x", "y0", "y1-1"});
    check_all(t, q);

    const OdeSystem ref = parse_ode(kRef);
    t = trivial_candidates(ref);
    for (const auto& c : t) CHECK(c.P != ref.B);
    check_all(t, ref);
}

TEST_CASE("resultant_candidates examples")
{
    const OdeSystem ref = parse_ode(kRef);
    auto r = resultant_candidates(ref);
    auto got = names(r);
    CHECK(got.count("y1^2-2*y1-y0") == 1);
    CHECK(got.count("y1+y0+x") == 1);
    CHECK(got == std::set<std::string>{"y1+y0+x", "y1^2-2*y1-y0", "y1^2-y1+x", "y1^3+x*y1-2*y1-y0"});
    check_all(r, ref);

    CHECK_THROWS_AS(resultant_candidates(parse_ode("y' = y")), PreconditionFailed);

    const OdeSystem yx = parse_ode("y' = y/x");
    CHECK(resultant(yx.A, yx.B, VarId::x()) == P("y0"));
    CHECK(resultant(yx.A, yx.B, VarId::y(0)) == P("x"));
    r = resultant_candidates(yx);
    CHECK(names(r) == std::set<std::string>{"x", "y0", "y0+x"});
    check_all(r, yx);
}

TEST_CASE("resultant factors of the reference ODE")
{
    const OdeSystem ref = parse_ode(kRef);
    ResultantSearch s = resultant_search(ref);
    auto it = std::find_if(s.resultants.begin(), s.resultants.end(), [](const auto& p) { return p.first == VarId::x(); });
    REQUIRE(it != s.resultants.end());
    CHECK(it->second.expand() == -(P("2*y1^2+y1-2") * P("y1^2-2*y1-y0")));
}

TEST_CASE("solve_hypothesis_constant examples")
{
    const OdeSystem ref = parse_ode(kRef);
    const MultiPoly F = P("y1^2-2*y1-y0");

    auto s0 = solve_hypothesis_constant({0, F, VarId::x()}, ref);
    REQUIRE(s0.size() == 1);
    CHECK_FALSE(s0[0].c);
    CHECK(s0[0].P_hyp == F);

    auto s1 = solve_hypothesis_constant({1, F, VarId::x()}, ref);
    REQUIRE(s1.size() == 1);
    REQUIRE(s1[0].c);
    CHECK(*s1[0].c == 1);
    CHECK(s1[0].P_hyp == P("(y1-1)*(y1+y0+x)"));
    CHECK(ref.B + *s1[0].c * F == P("2*(y1-1)*(y1+y0+x)"));

    for (const char* darboux : {"y1+y0+x", "y1^2-y1+x"}) {
        auto s = solve_hypothesis_constant({0, P(darboux), VarId::x()}, ref);
        REQUIRE(s.size() == 1);
        CHECK_FALSE(s[0].c);
        CHECK(s[0].P_hyp == P(darboux));
    }
}

TEST_CASE("ps_oracle_enumerate examples")
{
    const OdeSystem yx = parse_ode("y' = y/x");
    const std::vector<Monomial> sup{Monomial::of(VarId::x()), Monomial::of(VarId::y(0)), Monomial()};
    auto o = ps_oracle_enumerate(yx, sup, 1);
    // every x + c*y0 is a Darboux polynomial here; the sweep finds the c = +-1 members too
    CHECK(names(o) == std::set<std::string>{"x", "y0", "y0-x", "y0+x"});
    check_all(o, yx);

    o = ps_oracle_enumerate(parse_ode("y' = y"), {Monomial::of(VarId::y(0)), Monomial()}, 1);
    CHECK(names(o) == std::set<std::string>{"y0"});

    const OdeSystem ref = parse_ode(kRef);
    o = ps_oracle_enumerate(ref, {Monomial::of(VarId::y(1), 2), Monomial::of(VarId::y(1)), Monomial::of(VarId::y(0))}, 2);
    CHECK(names(o).count("y1^2-2*y1-y0") == 1);
    check_all(o, ref);

    CHECK_THROWS_AS(ps_oracle_enumerate(ref, monomials_up_to(2, 3), 3, 1000), BudgetExceeded);
}

TEST_CASE("ak1 relations")
{
    const OdeSystem ref = parse_ode(kRef);
    const std::vector<VarId> xy{VarId::x(), VarId::y(0)};
    // left side R_{x,y0}(P,(A,B)) vanishes, right side does not: 0 divides nothing
    const MultiPoly lhs = resultant(resultant(P("y1+y0+x"), ref.B, VarId::x()),
                                    resultant(ref.A, ref.B, VarId::x()), VarId::y(0));
    CHECK(lhs.is_zero());
    CHECK(testsupport::sylvester_resultant(testsupport::sylvester_resultant(P("y1+y0+x"), ref.B, VarId::x()),
                                           testsupport::sylvester_resultant(ref.A, ref.B, VarId::x()), VarId::y(0))
              .is_zero());
    CHECK_FALSE(ak1_divisibility_check(P("y1+y0+x"), ref, {}, Ak1Relation::C4, xy));
    CHECK_THROWS_AS(ak1_divisibility_check(P("y1+y0+x"), ref, {}, Ak1Relation::C4, {VarId::x()}), ArgumentError);
}

TEST_CASE("resultant divisibility where it holds")
{
    const OdeSystem ref = parse_ode(kRef);
    const MultiPoly ra = resultant(ref.A, ref.B, VarId::x());
    for (const char* p : {"y1^2-2*y1-y0", "y1+y0+x"}) {
        INFO(p);
        CHECK(divide(ra, resultant(P(p), ref.B, VarId::x())));
    }
    const OdeSystem yx = parse_ode("y' = y/x");
    for (const auto& c : resultant_candidates(yx)) {
        for (VarId z : space(yx)) {
            MultiPoly rp = resultant(c.P, yx.B, z), rab = resultant(yx.A, yx.B, z);
            if (rp.is_constant() || rab.is_constant()) continue;
            CHECK(divide(rab, rp));
        }
    }
}

TEST_CASE("resultant divisibility fails for Darboux polynomials of the reference ODE")
{
    // R_z(P,B) R_z(L,B) = R_z(A,B) R_z(dP/dy1,B) only gives divisibility when
    // R_z(P,B) is coprime to R_z(dP/dy1,B)
    const OdeSystem ref = parse_ode(kRef);
    const MultiPoly Pd = P("y1^2-2*y1-y0");
    REQUIRE(darboux_test(Pd, ref));
    for (VarId z : {VarId::y(0), VarId::y(1)}) {
        INFO(z.name());
        const MultiPoly rp = testsupport::sylvester_resultant(Pd, ref.B, z);
        const MultiPoly ra = testsupport::sylvester_resultant(ref.A, ref.B, z);
        REQUIRE_FALSE(rp.is_constant());
        REQUIRE_FALSE(ra.is_constant());
        CHECK_FALSE(divide(ra, rp));
        CHECK_FALSE(gcd(rp, testsupport::sylvester_resultant(derivative(Pd, VarId::y(1)), ref.B, z)).is_constant());
    }
}

TEST_CASE("resultant divisibility fails for a Darboux factor of a generated ODE")
{
    // y2 = (-15*y1^2-18*y0*y1-12*x+2)/(6*y1^2+6*y0*y1-6*y1-3*y0+4*x) has the
    // integrating factor B/(3*y1^2+3*y0*y1+2*x) (first integral
    // y1+3*x-1-1/2*log(3*y1^2+3*y0*y1+2*x)), yet R_x(P,B) does not divide R_x(A,B)
    const OdeSystem ode = normalize_ode(P("-15*y1^2-18*y0*y1-12*x+2"), P("6*y1^2+6*y0*y1-6*y1-3*y0+4*x"), 2);
    const MultiPoly Pd = P("3*y1^2+3*y0*y1+2*x");
    REQUIRE(darboux_test(Pd, ode));
    const FirstIntegral zeta = parse_first_integral("y1+3*x-1-1/2*log(3*y1^2+3*y0*y1+2*x)");
    CHECK(verify_first_integral(zeta, ode).valid);

    const MultiPoly rp = resultant(Pd, ode.B, VarId::x());
    const MultiPoly ra = resultant(ode.A, ode.B, VarId::x());
    REQUIRE_FALSE(rp.is_constant());
    REQUIRE_FALSE(ra.is_constant());
    CHECK_FALSE(divide(ra, rp));
    CHECK(rp == testsupport::sylvester_resultant(Pd, ode.B, VarId::x()));
    CHECK(ra == testsupport::sylvester_resultant(ode.A, ode.B, VarId::x()));
}

TEST_CASE("oracle output is contained in the resultant candidates")
{
    for (const char* text : {kRef, "y' = y"}) {
        const OdeSystem ode = parse_ode(text);
        std::vector<DarbouxCandidate> rc;
        try {
            rc = resultant_candidates(ode);
        } catch (const PreconditionFailed&) {
            rc = trivial_candidates(ode);
        }
        std::vector<Monomial> sup = ode.n == 1 ? monomials_up_to(1, 2)
                                               : std::vector<Monomial>{Monomial::of(VarId::y(1), 2), Monomial::of(VarId::y(1)),
                                                                       Monomial::of(VarId::y(0)), Monomial::of(VarId::x()), Monomial()};
        auto o = ps_oracle_enumerate(ode, sup, ode.n == 1 ? 2u : 1u);
        auto have = names(rc);
        for (const auto& c : o) {
            INFO(text << " oracle " << c.P.to_string());
            CHECK(have.count(c.P.to_string()) == 1);
        }
    }
}

TEST_CASE("candidate search is deterministic")
{
    const OdeSystem ref = parse_ode(kRef);
    auto a = resultant_candidates(ref, {}, {true, true});
    auto b = resultant_candidates(ref, {}, {true, true});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].P == b[i].P);
    check_all(a, ref);
}

TEST_CASE("generated ODEs: every candidate re-verifies")
{
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        RandomIntegralConfig cfg;
        cfg.n = 1 + seed % 2;
        cfg.max_degree = 1;
        cfg.allow_logs = true;
        GeneratedOde g = generate_from_integral(random_integral(seed, cfg), cfg.n);
        std::vector<DarbouxCandidate> rc;
        try {
            rc = resultant_candidates(g.ode, {}, {true, true});
        } catch (const PreconditionFailed&) {
            rc = trivial_candidates(g.ode);
        } catch (const DegreeLimitExceeded&) {
            continue;
        }
        check_all(rc, g.ode);
    }
}
