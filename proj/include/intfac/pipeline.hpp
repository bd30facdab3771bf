#pragma once

#include "intfac/darboux.hpp"
#include "intfac/integrals.hpp"
#include "intfac/mu.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace intfac {

struct PipelineOptions {
    // irreducible-factor hypotheses only
    bool factors_only = false;
    bool oracle = false;
    unsigned support_degree = 2;
    unsigned coeff_bound = 2;
    unsigned max_factor_degree = 8;
    // seconds per stage, 0 for none
    double time_limit = 0;
    std::uint64_t seed = 1;
    unsigned budget = 4000;
};

struct SolutionReport {
    ExponentSolution solution;
    MuForm mu;
    // free parameters set to 0
    MuForm instance;
    bool instance_exact = false;
    // n >= 2 only
    std::optional<bool> must_pass;
};

struct RunReport {
    std::string input;
    OdeSystem ode;
    std::vector<std::pair<VarId, Factorization>> resultants;
    std::vector<HypothesisTrace> hypotheses;
    std::vector<DarbouxCandidate> candidates;
    std::vector<SolutionReport> solutions;
    std::optional<QuadratureResult> quadrature;
    std::vector<std::string> diagnostics;
    std::vector<std::pair<std::string, double>> timing;

    bool found() const { return !solutions.empty(); }
};

RunReport find_mu(const OdeSystem& ode, const PipelineOptions& options = {});
// Parses first; parse errors propagate.
RunReport find_mu(const std::string& text, const PipelineOptions& options = {});

nlohmann::json to_json(const RunReport& report, bool with_timing = true);
std::string to_text(const RunReport& report);

// Fixture record shared by the generator and the corpus.
nlohmann::json record_json(const GeneratedOde& g);

inline constexpr const char* kReportSchema = "intfac/run-report/1";
inline constexpr const char* kRecordSchema = "intfac/record/1";

} // namespace intfac
