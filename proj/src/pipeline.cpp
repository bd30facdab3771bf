#include "intfac/pipeline.hpp"

#include "intfac/errors.hpp"
#include "intfac/expr.hpp"

#include <chrono>
#include <sstream>

namespace intfac {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

class Stages {
public:
    Stages(RunReport& r, double limit) : report_(r), limit_(limit) {}

    // false once a stage has run past the limit
    template <class F>
    bool run(const std::string& name, F&& f)
    {
        if (stopped_) return false;
        auto t0 = Clock::now();
        try {
            f();
        } catch (const Error& e) {
            report_.diagnostics.push_back(name + ": " + e.kind() + ": " + e.what());
        }
        double dt = std::chrono::duration<double>(Clock::now() - t0).count();
        report_.timing.emplace_back(name, dt);
        if (limit_ > 0 && dt > limit_) {
            report_.diagnostics.push_back(name + ": time limit of " + std::to_string(limit_) + " s exceeded");
            stopped_ = true;
        }
        return !stopped_;
    }

private:
    RunReport& report_;
    double limit_;
    bool stopped_ = false;
};

std::map<std::string, Rational> zeros(const ExponentSolution& s)
{
    std::map<std::string, Rational> m;
    for (const auto& p : s.free_params) m[p] = 0;
    return m;
}

} // namespace

RunReport find_mu(const OdeSystem& ode, const PipelineOptions& options)
{
    RunReport r;
    r.ode = ode;
    r.input = ode.to_string();
    FactorLimits limits;
    limits.max_total_degree = options.max_factor_degree;
    Stages stages(r, options.time_limit);

    bool searched = stages.run("candidates", [&] {
        try {
            SearchOptions so;
            so.divisors = !options.factors_only;
            so.shift = !options.factors_only;
            ResultantSearch s = resultant_search(ode, limits, so);
            r.resultants = std::move(s.resultants);
            r.hypotheses = std::move(s.hypotheses);
            r.candidates = std::move(s.candidates);
            for (auto& d : s.diagnostics) r.diagnostics.push_back("candidates: " + d);
        } catch (const PreconditionFailed& e) {
            r.diagnostics.push_back(std::string("candidates: PreconditionFailed: ") + e.what());
            r.candidates = trivial_candidates(ode, limits);
        }
    });
    if (!searched) return r;

    if (options.oracle) {
        if (!stages.run("oracle", [&] {
                auto found = ps_oracle_enumerate(ode, monomials_up_to(ode.n, options.support_degree),
                                                 options.coeff_bound);
                r.candidates.insert(r.candidates.end(), found.begin(), found.end());
                sort_candidates(r.candidates);
            }))
            return r;
    }

    if (!stages.run("exponents", [&] {
            if (r.candidates.empty()) {
                MuForm mu = assemble_mu(ode, {}, {});
                if (euler_exactness(mu, ode).exact) {
                    ExponentSolution s;
                    s.residual_verified = true;
                    r.solutions.push_back({s, mu, mu, true, std::nullopt});
                }
                return;
            }
            SolveOptions so;
            so.seed = options.seed;
            so.budget = options.budget;
            SolveResult res = solve_exponents(ode, r.candidates, so);
            for (auto& d : res.diagnostics) r.diagnostics.push_back("exponents: " + d);
            for (auto& s : res.solutions) {
                SolutionReport sr;
                sr.mu = mu_for(ode, r.candidates, s);
                sr.instance = normal_form(sr.mu.bind(zeros(s)));
                sr.instance_exact = euler_exactness(sr.instance, ode).exact;
                if (ode.n >= 2) sr.must_pass = must_check(sr.instance, ode).exact;
                sr.solution = std::move(s);
                r.solutions.push_back(std::move(sr));
            }
        }))
        return r;

    if (ode.n == 1 && r.found()) {
        stages.run("quadrature", [&] {
            for (const auto& s : r.solutions) {
                if (!s.instance.is_rational()) continue;
                r.quadrature = first_integral_n1(s.instance, ode);
                if (r.quadrature->integral) return;
            }
        });
    }
    return r;
}

RunReport find_mu(const std::string& text, const PipelineOptions& options)
{
    RunReport r = find_mu(parse_ode(text), options);
    r.input = text;
    return r;
}

json to_json(const RunReport& r, bool with_timing)
{
    json j;
    j["schema"] = kReportSchema;
    j["input"] = r.input;
    j["ode"] = {{"order", r.ode.n}, {"text", r.ode.to_string()}, {"A", r.ode.A.to_string()}, {"B", r.ode.B.to_string()}};
    j["status"] = r.found() ? "found" : "none";

    json res = json::array();
    for (const auto& [z, f] : r.resultants) {
        json factors = json::array();
        for (const auto& [g, m] : f.factors) factors.push_back({{"factor", g.to_string()}, {"multiplicity", m}});
        res.push_back({{"variable", z.name()}, {"unit", f.unit.get_str()}, {"factors", factors}});
    }
    j["resultants"] = res;

    json hyps = json::array();
    for (const auto& h : r.hypotheses) {
        json sols = json::array();
        for (const auto& s : h.solutions)
            sols.push_back({{"c", s.c ? json(s.c->get_str()) : json("free")}, {"P", s.P_hyp.to_string()}});
        json acc = json::array();
        for (const auto& p : h.accepted) acc.push_back(p.to_string());
        hyps.push_back({{"kind", to_string(h.kind)},
                        {"z", h.hypothesis.z.name()},
                        {"alpha", h.hypothesis.alpha},
                        {"F", h.hypothesis.F.to_string()},
                        {"solutions", sols},
                        {"accepted", acc}});
    }
    j["hypotheses"] = hyps;

    json cands = json::array();
    for (const auto& c : r.candidates) {
        json e = {{"P", c.P.to_string()}, {"source", to_string(c.source)}};
        e["cofactor"] = c.cofactor ? json(c.cofactor->to_string()) : json(nullptr);
        if (c.source == CandidateSource::Resultant) {
            e["z"] = c.z.name();
            e["alpha"] = c.alpha;
        }
        cands.push_back(e);
    }
    j["candidates"] = cands;

    json sols = json::array();
    for (const auto& s : r.solutions) {
        json as = json::array();
        for (const auto& a : s.solution.assignments) as.push_back(a.to_string());
        json e = {{"exponents", as},
                  {"free_params", s.solution.free_params},
                  {"residual_verified", s.solution.residual_verified},
                  {"mu", s.mu.to_string()},
                  {"mu_instance", s.instance.to_string()},
                  {"instance_exact", s.instance_exact}};
        e["must_check"] = s.must_pass ? json(*s.must_pass) : json(nullptr);
        sols.push_back(e);
    }
    j["solutions"] = sols;

    if (r.quadrature) {
        j["first_integral"] = r.quadrature->integral ? json(r.quadrature->integral->to_string()) : json(nullptr);
        j["one_form"] = r.quadrature->one_form;
        if (!r.quadrature->integral) j["unintegrated_reason"] = r.quadrature->reason;
    } else {
        j["first_integral"] = nullptr;
    }
    j["diagnostics"] = r.diagnostics;
    if (with_timing) {
        json t = json::object();
        for (const auto& [name, dt] : r.timing) t[name] = dt;
        j["timing"] = t;
    }
    return j;
}

std::string to_text(const RunReport& r)
{
    std::ostringstream out;
    out << "ode: " << r.ode.to_string() << "\n";
    for (const auto& [z, f] : r.resultants) {
        out << "resultant in " << z.name() << ": " << f.unit.get_str();
        for (const auto& [g, m] : f.factors) out << " * (" << g.to_string() << ")" << (m > 1 ? "^" + std::to_string(m) : "");
        out << "\n";
    }
    out << "candidates:\n";
    for (const auto& c : r.candidates)
        out << "  " << c.P.to_string() << "  [" << to_string(c.source) << "]"
            << (c.cofactor ? "  cofactor " + c.cofactor->to_string() : "") << "\n";
    if (r.solutions.empty()) out << "no integrating factor found\n";
    for (const auto& s : r.solutions) {
        out << "mu = " << s.mu.to_string();
        if (!s.solution.free_params.empty()) {
            out << "  (free:";
            for (const auto& p : s.solution.free_params) out << " " << p;
            out << ")";
        }
        out << "\n";
    }
    if (r.quadrature) {
        if (r.quadrature->integral) out << "first integral: " << r.quadrature->integral->to_string() << "\n";
        else out << "unintegrated: " << r.quadrature->one_form << " (" << r.quadrature->reason << ")\n";
    }
    for (const auto& d : r.diagnostics) out << "note: " << d << "\n";
    return out.str();
}

json record_json(const GeneratedOde& g)
{
    return {{"schema", kRecordSchema},
            {"order", g.ode.n},
            {"ode", g.ode.to_string()},
            {"mu", g.known_mu.to_string()},
            {"zeta", g.zeta.to_string()}};
}

} // namespace intfac
