#include "intfac/errors.hpp"
#include "intfac/expr.hpp"
#include "intfac/integrals.hpp"
#include "intfac/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace intfac;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kNoResult = 3 };

int fail(const Error& e, bool as_json)
{
    if (as_json) std::cout << json{{"error", e.kind()}, {"message", e.what()}}.dump(2) << "\n";
    std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
    return kUsage;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Integrating factors and first integrals for polynomial ODEs"};
    app.require_subcommand(1);

    bool as_json = false;
    bool as_text = false;
    bool no_timing = false;
    std::string ode_text;
    PipelineOptions opts;

    auto* find = app.add_subcommand("find-mu", "search Darboux candidates and solve for the exponents");
    find->add_option("ode", ode_text, "ODE, e.g. \"y'' = (y'^3 - y)/(x + y)\"")->required();
    find->add_flag("--json", as_json, "JSON report");
    find->add_flag("--text", as_text, "text report (default)");
    find->add_flag("--factors-only", opts.factors_only, "irreducible-factor hypotheses only");
    find->add_flag("--oracle", opts.oracle, "also enumerate candidates by brute force");
    find->add_option("--support-degree", opts.support_degree, "oracle support degree")->capture_default_str();
    find->add_option("--coeff-bound", opts.coeff_bound, "oracle coefficient bound")->capture_default_str();
    find->add_option("--max-factor-degree", opts.max_factor_degree, "factorization degree bound")->capture_default_str();
    find->add_option("--time-limit", opts.time_limit, "seconds per stage, 0 = none")->capture_default_str();
    find->add_option("--seed", opts.seed, "seed for verification points")->capture_default_str();
    find->add_flag("--no-timing", no_timing, "omit timing from the JSON report");

    std::string mu_text;
    std::string zeta_text;
    auto* verify = app.add_subcommand("verify", "check an integrating factor or a first integral");
    verify->add_option("ode", ode_text, "ODE")->required();
    auto* mu_opt = verify->add_option("--mu", mu_text, "integrating factor");
    auto* zeta_opt = verify->add_option("--zeta", zeta_text, "first integral");
    mu_opt->excludes(zeta_opt);
    verify->add_flag("--json", as_json, "JSON output");

    RandomIntegralConfig config;
    std::uint64_t seed = 1;
    auto* gen = app.add_subcommand("generate", "build an ODE from a first integral");
    auto* gz = gen->add_option("--zeta", zeta_text, "first integral");
    gen->add_option("--seed", seed, "seed for a random first integral")->excludes(gz);
    gen->add_option("--n", config.n, "ODE order")->capture_default_str();
    gen->add_option("--max-factors", config.max_factors, "random factors")->capture_default_str();
    gen->add_option("--max-degree", config.max_degree, "random factor degree")->capture_default_str();
    gen->add_flag("--logs", config.allow_logs, "random log term");
    gen->add_flag("--atans", config.allow_atans, "random atan term");
    gen->add_flag("--text", as_text, "plain text instead of JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*find) {
            RunReport r = find_mu(ode_text, opts);
            if (as_json && !as_text) std::cout << to_json(r, !no_timing).dump(2) << "\n";
            else std::cout << to_text(r);
            return r.found() ? kOk : kNoResult;
        }
        if (*verify) {
            OdeSystem ode = parse_ode(ode_text);
            json j{{"schema", "intfac/verify/1"}, {"ode", ode.to_string()}};
            bool ok = false;
            std::string residual;
            if (!zeta_text.empty()) {
                Validity v = verify_first_integral(parse_first_integral(zeta_text), ode);
                ok = v.valid;
                residual = v.residual.to_string();
                j["kind"] = "zeta";
                j["result"] = ok ? "Valid" : "Invalid";
            } else if (!mu_text.empty()) {
                Exactness e = verify_user_mu(parse_mu(mu_text), ode);
                ok = e.exact;
                residual = e.residual.to_string();
                j["kind"] = "mu";
                j["result"] = ok ? "Exact" : "NotExact";
            } else {
                std::cerr << "error: verify needs --mu or --zeta\n";
                return kUsage;
            }
            j["residual"] = residual;
            if (as_json) std::cout << j.dump(2) << "\n";
            else std::cout << j["result"].get<std::string>() << (ok ? "" : "  residual: " + residual) << "\n";
            return ok ? kOk : kNegative;
        }
        if (*gen) {
            FirstIntegral zeta = zeta_text.empty() ? random_integral(seed, config) : parse_first_integral(zeta_text);
            GeneratedOde g = generate_from_integral(zeta, config.n);
            json rec = record_json(g);
            if (zeta_text.empty()) rec["seed"] = seed;
            if (as_text)
                std::cout << "ode: " << g.ode.to_string() << "\nmu: " << g.known_mu.to_string()
                          << "\nzeta: " << g.zeta.to_string() << "\n";
            else std::cout << rec.dump(2) << "\n";
            return kOk;
        }
    } catch (const Error& e) {
        return fail(e, as_json);
    }
    return kUsage;
}
