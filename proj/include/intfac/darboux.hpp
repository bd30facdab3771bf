#pragma once

#include "intfac/factor.hpp"
#include "intfac/ode.hpp"

#include <optional>
#include <string>
#include <vector>

namespace intfac {

enum class CandidateSource { TrivialFactorOfA, TrivialFactorOfB, Resultant, Oracle };

std::string to_string(CandidateSource s);

struct DarbouxCandidate {
    MultiPoly P;
    // L with L*P = B*D(P) + A*dP/dy_{n-1}. Factors of A or B with
    // dP/dy_{n-1} = 0 or D(P) = 0 enter the pool without one.
    std::optional<MultiPoly> cofactor;
    CandidateSource source = CandidateSource::TrivialFactorOfA;
    // set for CandidateSource::Resultant
    VarId z;
    int alpha = 0;
};

// The cofactor L when P divides B*D(P) + A*dP/dy_{n-1}.
std::optional<MultiPoly> darboux_test(const MultiPoly& P, const OdeSystem& ode);

// dP/dy_{n-1} = 0 or D(P) = 0
bool structural_candidate(const MultiPoly& P, const OdeSystem& ode);

std::vector<DarbouxCandidate> trivial_candidates(const OdeSystem& ode, const FactorLimits& limits = {});

struct Hypothesis {
    int alpha = 0;
    MultiPoly F;
    VarId z;
};

struct HypothesisSolution {
    // nullopt: the equation holds for every c (c normalized to 1)
    std::optional<Rational> c;
    MultiPoly P_hyp;
};

// Solves R_{z*}(B*D(P) + A*dP/dy_{n-1}, P) = 0 for P = alpha*B + c*F.
std::vector<HypothesisSolution> solve_hypothesis_constant(const Hypothesis& h, const OdeSystem& ode,
                                                          std::vector<std::string>* diagnostics = nullptr);

// Factor: F an irreducible factor of R_z(A,B). Divisor: F a product of
// several of them. Shift: F = 1, for P with R_z(P,B) constant.
enum class HypothesisKind { Factor, Divisor, Shift };
std::string to_string(HypothesisKind k);

struct HypothesisTrace {
    Hypothesis hypothesis;
    HypothesisKind kind = HypothesisKind::Factor;
    std::vector<HypothesisSolution> solutions;
    std::vector<MultiPoly> accepted;
};

struct ResultantSearch {
    std::vector<std::pair<VarId, Factorization>> resultants;
    std::vector<HypothesisTrace> hypotheses;
    // union with trivial_candidates, canonical order
    std::vector<DarbouxCandidate> candidates;
    std::vector<std::string> diagnostics;
};

// The defaults run the hypotheses exactly as stated for irreducible factors.
struct SearchOptions {
    bool divisors = false;
    bool shift = false;
    unsigned max_divisors = 24;
};

ResultantSearch resultant_search(const OdeSystem& ode, const FactorLimits& limits = {},
                                 const SearchOptions& options = {});
std::vector<DarbouxCandidate> resultant_candidates(const OdeSystem& ode, const FactorLimits& limits = {},
                                                  const SearchOptions& options = {});

enum class Ak1Relation { C4, C5, C6, C7 };

struct Ak1Context {
    // the P~_i and Q~_j
    std::vector<MultiPoly> others;
    // a polynomial satisfying the Darboux condition (C6, C7)
    std::optional<MultiPoly> ps;
};

bool ak1_divisibility_check(const MultiPoly& P, const OdeSystem& ode, const Ak1Context& context, Ak1Relation relation,
                            const std::vector<VarId>& vars);

// Every irreducible polynomial with the given support and integer
// coefficients in [-bound, bound] that passes darboux_test.
std::vector<DarbouxCandidate> ps_oracle_enumerate(const OdeSystem& ode, const std::vector<Monomial>& support,
                                                  unsigned bound, std::uint64_t budget = 5'000'000);

// Monomials in x, y0 .. y_{n-1} of total degree <= d, without 1 when
// include_one is false.
std::vector<Monomial> monomials_up_to(unsigned n, unsigned d, bool include_one = true);

// Canonical order and deduplication by P.
void sort_candidates(std::vector<DarbouxCandidate>& cands);

} // namespace intfac
