#include "pgn/app.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "pgn/errors.hpp"
#include "pgn/io.hpp"

namespace pgn {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw UsageError("'" + key + "' expects a boolean, got '" + v + "'");
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        double d = std::stod(v, &used);
        if (used == v.size()) return d;
    } catch (const std::exception&) {
    }
    try {
        return to_double(parse_rational(v));
    } catch (const Error&) {
        throw UsageError("'" + key + "' expects a number, got '" + v + "'");
    }
}

std::string double_text(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct SubcommandSpec {
    const char* name;
    const char* help;
    std::vector<std::pair<const char*, const char*>> options;  // name, help
};

const std::vector<SubcommandSpec>& subcommands() {
    static const std::vector<SubcommandSpec> specs{
        {"construct",
         "Assemble a Roy system from an exponent tuple",
         {{"n", "dimension n >= 2"},
          {"gamma", "block parameter gamma (rational)"},
          {"tau", "comma-separated tau_0..tau_{n-1}, 'inf' allowed"},
          {"delta", "perturbation in [0, 1/(32n^2))"},
          {"blocks", "number of block rounds K"}}},
        {"validate", "Check a system JSON against the Roy axioms", {}},
        {"block",
         "Build one block from parameters (JSON via --input, or flags)",
         {{"n", "dimension n >= 2"},
          {"gamma", "gamma"},
          {"t-minus", "left endpoint T-"},
          {"t-plus", "right endpoint T+"},
          {"a-minus", "comma-separated a-^1..a-^{n+1}"},
          {"a-plus", "comma-separated a+^1..a+^{n+1}"}}},
        {"profile",
         "Successive minima profile over a Q grid",
         {{"x", "comma-separated rationals"},
          {"q", "explicit comma-separated Q grid (rationals > 1)"},
          {"t-min", "first t (default 1)"},
          {"t-max", "last t (default 12)"},
          {"t-step", "t step (default 1)"},
          {"threads", "worker threads, 0 = hardware count"}}},
        {"classify",
         "Heuristic verdicts from a profile CSV",
         {{"d", "index d of s_d (default 0)"},
          {"eps", "epsilon for the Dirichlet-improvability check"},
          {"window-lo", "window start in t"},
          {"window-hi", "window end in t"},
          {"bad-cap-offset", "Bad cap above the observed infimum (default 2)"},
          {"sing-step", "minimum rise of quarter infima (default 0.2)"}}},
        {"tau-check",
         "Check an exponent tuple against the transference inequalities",
         {{"n", "dimension"}, {"tau", "comma-separated tau_0..tau_{n-1}"}, {"omega", "comma-separated omega_0..omega_{n-1}"}}},
        {"subspace",
         "Best rational subspace approximations up to a height",
         {{"x", "comma-separated rationals"}, {"d", "subspace dimension"}, {"h-max", "height bound"}}},
        {"dirichlet",
         "First Dirichlet witness (Z, Y) with |Z| <= N",
         {{"x", "comma-separated rationals"}, {"d", "grade of Z"}, {"N", "height bound"}}},
        {"intermediate",
         "Smallest subspace certificate at a given epsilon",
         {{"x", "comma-separated rationals"}, {"d", "subspace dimension"}, {"N", "height bound"}, {"eps", "epsilon"}}},
    };
    return specs;
}

const SubcommandSpec* find_spec(const std::string& name) {
    for (const auto& s : subcommands())
        if (name == s.name) return &s;
    return nullptr;
}

RunConfig parse_args_impl(const std::vector<std::string>& args, std::string* help) {
    CLI::App app{"Exact parametric geometry of numbers toolkit", "pgnlab"};
    app.require_subcommand(0, 1);
    std::string config_path, input, out, cache_dir;
    double budget = 0;
    bool strict = false;
    app.add_option("--config", config_path, "key = value file; flags take precedence");
    app.add_option("--input", input, "input file");
    app.add_option("--out", out, "output directory");
    app.add_option("--budget", budget, "enumeration budget");
    app.add_flag("--strict", strict, "require gamma > C_n");
    app.add_option("--cache-dir", cache_dir, "profile cache directory (else PGNLAB_CACHE_DIR)");

    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, CLI::App*> subs;
    for (const auto& spec : subcommands()) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.help);
        sub->fallthrough();
        subs[spec.name] = sub;
        for (const auto& [opt, h] : spec.options) sub->add_option(std::string("--") + opt, values[spec.name][opt], h);
        sub->add_option("input", input, "input file");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        if (help) *help = app.help();
        return {};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    RunConfig cfg;
    if (!config_path.empty()) cfg = parse_config(read_file(config_path));
    for (const auto& [name, sub] : subs) {
        if (!sub->parsed()) continue;
        cfg.subcommand = name;
        for (const auto& [opt, h] : find_spec(name)->options)
            if (sub->count(std::string("--") + opt) > 0) cfg.params[opt] = values[name][opt];
    }
    if (app.count("--input") || !input.empty()) cfg.input = input;
    if (app.count("--out")) cfg.out = out;
    if (app.count("--budget")) cfg.budget = budget;
    if (strict) cfg.strict = true;
    if (app.count("--cache-dir")) cfg.cache_dir = cache_dir;
    if (cfg.subcommand.empty()) throw UsageError("no subcommand given (on the command line or in the config file)");
    return cfg;
}

// Parameter access with defaults.
class Params {
public:
    explicit Params(const RunConfig& cfg) : cfg_(cfg) {
        const auto* spec = find_spec(cfg.subcommand);
        if (!spec) throw UsageError("unknown subcommand '" + cfg.subcommand + "'");
        std::set<std::string> known;
        for (const auto& o : spec->options) known.insert(o.first);
        for (const auto& [k, v] : cfg.params)
            if (!known.count(k)) throw UsageError("'" + k + "' is not a parameter of " + cfg.subcommand);
    }
    bool has(const std::string& k) const { return cfg_.params.count(k) > 0; }
    std::string str(const std::string& k) const {
        auto it = cfg_.params.find(k);
        if (it == cfg_.params.end()) throw UsageError("missing parameter --" + k);
        return it->second;
    }
    std::string str(const std::string& k, const std::string& def) const { return has(k) ? str(k) : def; }
    int integer(const std::string& k, std::optional<int> def = std::nullopt) const {
        if (!has(k)) {
            if (!def) throw UsageError("missing parameter --" + k);
            return *def;
        }
        Rational r = parse_rational(str(k));
        if (r.get_den() != 1 || !r.get_num().fits_sint_p()) throw UsageError("--" + k + " expects an integer");
        return static_cast<int>(r.get_num().get_si());
    }
    Rational rational(const std::string& k, std::optional<Rational> def = std::nullopt) const {
        if (!has(k)) {
            if (!def) throw UsageError("missing parameter --" + k);
            return *def;
        }
        return parse_rational(str(k));
    }
    double real(const std::string& k, double def) const { return has(k) ? parse_double(k, str(k)) : def; }

private:
    const RunConfig& cfg_;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void emit(const RunConfig& cfg, const std::string& file, const std::string& text, std::ostream& out) {
    out << text;
    if (!cfg.out.empty()) write_file((std::filesystem::path(cfg.out) / file).string(), text);
}

std::string out_dir(const RunConfig& cfg) { return cfg.out.empty() ? "." : cfg.out; }

std::string join_path(const std::string& dir, const std::string& file) {
    return (std::filesystem::path(dir) / file).string();
}

std::string rationals_text(const std::vector<Rational>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s;
}

int cmd_construct(const RunConfig& cfg, std::ostream& out) {
    Params p(cfg);
    ConstructionParams cp;
    cp.n = p.integer("n", 2);
    cp.gamma = p.rational("gamma", Rational(1));
    cp.tau = parse_extended_list(p.str("tau"));
    cp.delta = p.rational("delta", Rational(0));
    cp.blocks = p.integer("blocks", 6);
    cp.strict = cfg.strict;
    if (static_cast<int>(cp.tau.size()) != cp.n)
        throw Error(Errc::InvalidParams, "tau needs exactly n = " + std::to_string(cp.n) + " entries");
    Construction c = assemble(cp);
    Diagnostics d = system_diagnostics(c);
    const auto dir = out_dir(cfg);
    write_file(join_path(dir, "system.json"), dump(to_json(c.system)));
    write_file(join_path(dir, "diagnostics.json"), dump(to_json(d, c)));
    write_file(join_path(dir, "samples.csv"), samples_csv(c.system));
    AxiomReport rep = validate_roy(c.system);
    out << "system on [0, " << to_string(c.system.hi()) << "] with " << c.blocks.size() << " blocks"
        << (rep.ok ? ", axioms hold" : ", AXIOMS VIOLATED") << "\n";
    out << "wrote " << join_path(dir, "system.json") << ", diagnostics.json, samples.csv\n";
    return rep.ok ? kExitOk : kExitValidation;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Params p(cfg);
    if (cfg.input.empty()) throw UsageError("validate needs a system JSON path");
    RoySystem s;
    try {
        s = roy_from_json(Json::parse(read_file(cfg.input)));
    } catch (const Json::exception& e) {
        throw Error(Errc::ParseError, e.what());
    }
    AxiomReport rep = validate_roy(s);
    emit(cfg, "report.json", dump(to_json(rep)), out);
    for (const auto& v : rep.violations)
        err << axiom_name(v.axiom) << " axiom violated on [" << to_string(v.t_lo) << ", " << to_string(v.t_hi)
            << "]: " << v.message << "\n";
    return rep.ok ? kExitOk : kExitValidation;
}

int cmd_block(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Params p(cfg);
    BlockParams bp;
    if (!cfg.input.empty()) {
        try {
            bp = block_params_from_json(Json::parse(read_file(cfg.input)));
        } catch (const Json::exception& e) {
            throw Error(Errc::ParseError, e.what());
        }
    } else {
        bp.n = p.integer("n", 2);
        bp.gamma = p.rational("gamma");
        bp.t_minus = p.rational("t-minus");
        bp.t_plus = p.rational("t-plus");
        bp.a_minus = parse_rational_list(p.str("a-minus"));
        bp.a_plus = parse_rational_list(p.str("a-plus"));
    }
    const auto bad = validate_block_params(bp);
    if (!bad.empty()) {
        for (const auto& v : bad) err << v.constraint << ": " << v.message << "\n";
        throw Error(Errc::InvalidParams, "block parameters violate " + bad.front().constraint);
    }
    Block b = build_block(bp);
    Json j = to_json(b, block_extrema(b, bp));
    j["params"] = to_json(bp);
    emit(cfg, "block.json", dump(j), out);
    return kExitOk;
}

int cmd_profile(const RunConfig& cfg, std::ostream& out) {
    Params p(cfg);
    const auto x = parse_rational_list(p.str("x"));
    const int n = static_cast<int>(x.size());
    if (n < 1) throw UsageError("--x needs at least one coordinate");
    std::vector<Rational> grid;
    if (p.has("q")) {
        grid = parse_rational_list(p.str("q"));
    } else {
        const double lo = p.real("t-min", 1), hi = p.real("t-max", 12), step = p.real("t-step", 1);
        if (!(step > 0) || hi < lo) throw UsageError("need t-step > 0 and t-max >= t-min");
        for (long k = 0;; ++k) {
            const double t = lo + k * step;
            if (t > hi + 1e-9) break;
            grid.push_back(q_from_t(t));
        }
    }
    const double budget = cfg.budget.value_or(kDefaultBudget);
    const unsigned threads = static_cast<unsigned>(p.integer("threads", 0));

    std::string cache_dir = cfg.cache_dir;
    if (cache_dir.empty())
        if (const char* env = std::getenv("PGNLAB_CACHE_DIR")) cache_dir = env;
    std::optional<ProfileCache> cache;
    if (!cache_dir.empty()) cache.emplace(cache_dir);

    Profile prof{n, x, std::vector<ProfileRow>(grid.size())};
    std::vector<Rational> missing;
    std::vector<size_t> missing_at;
    for (size_t i = 0; i < grid.size(); ++i) {
        std::optional<std::vector<Rational>> hit;
        if (cache) hit = cache->load(n, x, grid[i]);
        if (hit) {
            prof.rows[i] = make_row(n, grid[i], std::move(*hit));
        } else {
            missing.push_back(grid[i]);
            missing_at.push_back(i);
        }
    }
    if (!missing.empty()) {
        Profile fresh = profile(n, x, missing, budget, threads);
        for (size_t k = 0; k < missing.size(); ++k) {
            if (cache) cache->store(n, x, fresh.rows[k]);
            prof.rows[missing_at[k]] = std::move(fresh.rows[k]);
        }
    }
    const auto problems = profile_violations(prof);
    const auto path = join_path(out_dir(cfg), "profile.csv");
    write_file(path, profile_csv(prof));
    Integer den = 1;
    for (const auto& v : x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    out << "profile of x = (" << rationals_text(x) << "), denominator " << den.get_str() << ", at " << grid.size() << " grid points ("
        << grid.size() - missing.size() << " cached), wrote " << path << "\n";
    for (const auto& s : problems) out << "invariant violated: " << s << "\n";
    return problems.empty() ? kExitOk : kExitValidation;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    Params p(cfg);
    if (cfg.input.empty()) throw UsageError("classify needs a profile CSV path");
    Profile prof = profile_from_csv(read_file(cfg.input));
    if (prof.rows.empty()) throw Error(Errc::InsufficientData, "profile has no rows");
    std::optional<Window> window;
    if (p.has("window-lo") || p.has("window-hi")) {
        Window w = default_window(prof);
        if (p.has("window-lo")) w.lo = p.real("window-lo", 0);
        if (p.has("window-hi")) w.hi = p.real("window-hi", 0);
        window = w;
    }
    ClassifyConfig cc;
    cc.bad_cap_offset = p.real("bad-cap-offset", cc.bad_cap_offset);
    cc.sing_step = p.real("sing-step", cc.sing_step);
    const int d = p.integer("d", 0);
    if (d < 0 || d > prof.n - 1) throw UsageError("--d must lie in [0, n-1]");

    TailStats stats = bad_sing_stat(prof, d, window, cc);
    Json j{{"n", prof.n}, {"d", d}, {"verdict", verdict_name(stats.verdict)}, {"label", kHeuristicLabel}};
    j["tail"] = to_json(stats);
    Json est = Json::array();
    for (int e = 0; e <= prof.n - 1; ++e) {
        try {
            est.push_back(to_json(exponent_estimate(prof, e, window)));
        } catch (const Error& ex) {
            if (ex.code() != Errc::InsufficientData) throw;
        }
    }
    j["exponents"] = est;
    if (p.has("eps")) j["dirichlet_improvable"] = to_json(di_check(prof, p.rational("eps"), window, true));
    emit(cfg, "verdict.json", dump(j), out);
    return kExitOk;
}

int cmd_tau_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Params p(cfg);
    if (!p.has("tau") && !p.has("omega")) throw UsageError("tau-check needs --tau and/or --omega");
    Json j = Json::object();
    bool ok = true;
    auto tuple = [&](const std::string& key) {
        auto v = parse_extended_list(p.str(key));
        const int n = p.integer("n", static_cast<int>(v.size()));
        if (static_cast<int>(v.size()) != n) throw UsageError("--" + key + " needs exactly n entries");
        return std::make_pair(n, v);
    };
    if (p.has("tau")) {
        auto [n, tau] = tuple("tau");
        TauReport r = validate_tau(n, tau);
        ok = ok && r.ok;
        for (const auto& v : r.violations) err << "violated: " << v << "\n";
        j["tau"] = to_json(r);
    }
    if (p.has("omega")) {
        auto [n, omega] = tuple("omega");
        TransferenceReport r = transference_check(n, omega);
        ok = ok && r.ok;
        for (const auto& v : r.violations) err << "violated: " << v << "\n";
        j["transference"] = to_json(r);
    }
    j["ok"] = ok;
    emit(cfg, "tau_check.json", dump(j), out);
    return ok ? kExitOk : kExitValidation;
}

int cmd_subspace(const RunConfig& cfg, std::ostream& out) {
    Params p(cfg);
    const auto x = parse_rational_list(p.str("x"));
    const int d = p.integer("d", 0);
    const Rational h = p.rational("h-max");
    auto recs = best_approx(x, d, h, cfg.budget.value_or(kExteriorBudget));
    Json j{{"x", to_json(x)}, {"d", d}, {"h_max", to_string(h)}, {"records", to_json(recs)}};
    emit(cfg, "subspace.json", dump(j), out);
    return kExitOk;
}

int cmd_dirichlet(const RunConfig& cfg, std::ostream& out) {
    Params p(cfg);
    const auto x = parse_rational_list(p.str("x"));
    const int d = p.integer("d", 0);
    const Rational N = p.rational("N");
    DirichletWitness w = dirichlet_search(x, d, N);
    Json j{{"x", to_json(x)}, {"d", d}, {"N", to_string(N)}, {"witness", to_json(w)}};
    emit(cfg, "dirichlet.json", dump(j), out);
    return kExitOk;
}

int cmd_intermediate(const RunConfig& cfg, std::ostream& out) {
    Params p(cfg);
    const auto x = parse_rational_list(p.str("x"));
    const int d = p.integer("d", 0);
    const Rational N = p.rational("N");
    const Rational eps = p.rational("eps");
    auto X = intermediate_search(x, d, N, eps, cfg.budget.value_or(kExteriorBudget));
    Json j{{"x", to_json(x)}, {"d", d}, {"N", to_string(N)}, {"eps", to_string(eps)}, {"found", X.has_value()}};
    j["X"] = X ? to_json(*X) : Json();
    if (X) j["subspace"] = to_json(subspace_from_plucker(*X));
    emit(cfg, "intermediate.json", dump(j), out);
    return kExitOk;
}

int exit_code_of(Errc c) {
    switch (c) {
        case Errc::ConstraintInfeasible:
        case Errc::BudgetExceeded:
        case Errc::GrowthViolation:
        case Errc::ExhaustedWithoutWitness:
            return kExitInfeasible;
        default:
            return kExitUsage;
    }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) throw UsageError("config line " + std::to_string(lineno) + ": empty key");
        if (key == "subcommand")
            cfg.subcommand = value;
        else if (key == "input")
            cfg.input = value;
        else if (key == "out")
            cfg.out = value;
        else if (key == "budget")
            cfg.budget = parse_double(key, value);
        else if (key == "strict")
            cfg.strict = parse_bool(key, value);
        else if (key == "cache-dir")
            cfg.cache_dir = value;
        else
            cfg.params[key] = value;
    }
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "subcommand = " << cfg.subcommand << "\n";
    for (const auto& [k, v] : cfg.params) out << k << " = " << v << "\n";
    if (!cfg.input.empty()) out << "input = " << cfg.input << "\n";
    if (!cfg.out.empty()) out << "out = " << cfg.out << "\n";
    if (cfg.budget) out << "budget = " << double_text(*cfg.budget) << "\n";
    out << "strict = " << (cfg.strict ? "true" : "false") << "\n";
    if (!cfg.cache_dir.empty()) out << "cache-dir = " << cfg.cache_dir << "\n";
    return out.str();
}

RunConfig parse_args(const std::vector<std::string>& args) {
    std::string help;
    RunConfig cfg = parse_args_impl(args, &help);
    if (!help.empty()) throw UsageError(help);
    return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const std::string& s = cfg.subcommand;
        if (s == "construct") return cmd_construct(cfg, out);
        if (s == "validate") return cmd_validate(cfg, out, err);
        if (s == "block") return cmd_block(cfg, out, err);
        if (s == "profile") return cmd_profile(cfg, out);
        if (s == "classify") return cmd_classify(cfg, out);
        if (s == "tau-check") return cmd_tau_check(cfg, out, err);
        if (s == "subspace") return cmd_subspace(cfg, out);
        if (s == "dirichlet") return cmd_dirichlet(cfg, out);
        if (s == "intermediate") return cmd_intermediate(cfg, out);
        throw UsageError("unknown subcommand '" + s + "'");
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_of(e.code());
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::logic_error& e) {
        err << "internal invariant failed: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + 1, argv + argc);
    RunConfig cfg;
    try {
        std::string help;
        cfg = parse_args_impl(args, &help);
        if (!help.empty()) {
            out << help;
            return kExitOk;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return run(cfg, out, err);
}

}  // namespace pgn
