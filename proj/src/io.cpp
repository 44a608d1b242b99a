#include "pgn/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pgn/errors.hpp"

namespace pgn {

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(Errc::ParseError, std::string("missing field '") + key + "'");
    return j.at(key);
}

Json double_json(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

}  // namespace

Json to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
    throw Error(Errc::ParseError, "expected a rational string, got " + j.dump());
}

Json to_json(const std::vector<Rational>& v) {
    Json a = Json::array();
    for (const auto& r : v) a.push_back(to_string(r));
    return a;
}

std::vector<Rational> rationals_from_json(const Json& j) {
    if (!j.is_array()) throw Error(Errc::ParseError, "expected an array of rationals");
    std::vector<Rational> out;
    for (const auto& e : j) out.push_back(rational_from_json(e));
    return out;
}

Json to_json(const ExtendedRational& r) { return to_string(r); }

Json to_json(const PLMap& m) { return Json{{"breakpoints", to_json(m.breakpoints())}, {"values", to_json(m.values())}}; }

PLMap plmap_from_json(const Json& j) {
    return PLMap(rationals_from_json(field(j, "breakpoints")), rationals_from_json(field(j, "values")));
}

Json to_json(const RoySystem& s) {
    Json comps = Json::array();
    for (const auto& c : s.components) comps.push_back(to_json(c));
    return Json{{"n", s.n}, {"components", comps}};
}

RoySystem roy_from_json(const Json& j) {
    const Json& n = field(j, "n");
    if (!n.is_number_integer()) throw Error(Errc::ParseError, "'n' must be an integer");
    std::vector<PLMap> comps;
    for (const auto& c : field(j, "components")) comps.push_back(plmap_from_json(c));
    return RoySystem(n.get<int>(), std::move(comps));
}

Json to_json(const AxiomReport& r) {
    Json v = Json::array();
    for (const auto& x : r.violations)
        v.push_back(Json{{"axiom", axiom_name(x.axiom)},
                         {"t_lo", to_string(x.t_lo)},
                         {"t_hi", to_string(x.t_hi)},
                         {"message", x.message}});
    return Json{{"ok", r.ok}, {"violations", v}};
}

AxiomReport axiom_report_from_json(const Json& j) {
    AxiomReport r;
    r.ok = field(j, "ok").get<bool>();
    for (const auto& v : field(j, "violations")) {
        Violation x;
        const auto name = field(v, "axiom").get<std::string>();
        bool known = false;
        for (Axiom a : {Axiom::Order, Axiom::Sum, Axiom::SlopeGroup, Axiom::Kink})
            if (name == axiom_name(a)) {
                x.axiom = a;
                known = true;
            }
        if (!known) throw Error(Errc::ParseError, "unknown axiom '" + name + "'");
        x.t_lo = rational_from_json(field(v, "t_lo"));
        x.t_hi = rational_from_json(field(v, "t_hi"));
        x.message = field(v, "message").get<std::string>();
        r.violations.push_back(std::move(x));
    }
    return r;
}

Json to_json(const BlockParams& p) {
    return Json{{"n", p.n},
                {"gamma", to_string(p.gamma)},
                {"t_minus", to_string(p.t_minus)},
                {"t_plus", to_string(p.t_plus)},
                {"a_minus", to_json(p.a_minus)},
                {"a_plus", to_json(p.a_plus)}};
}

BlockParams block_params_from_json(const Json& j) {
    BlockParams p;
    p.n = field(j, "n").get<int>();
    p.gamma = rational_from_json(field(j, "gamma"));
    p.t_minus = rational_from_json(field(j, "t_minus"));
    p.t_plus = rational_from_json(field(j, "t_plus"));
    p.a_minus = rationals_from_json(field(j, "a_minus"));
    p.a_plus = rationals_from_json(field(j, "a_plus"));
    return p;
}

Json to_json(const Block& b, const BlockExtrema& e) {
    Json sched = Json::array();
    for (const auto& s : b.schedule)
        sched.push_back(Json{{"t_lo", to_string(s.t_lo)}, {"t_hi", to_string(s.t_hi)}, {"group", {s.group.r1, s.group.r2}}});
    Json ratio = Json::object();
    for (const auto& [d, v] : e.min_ratio) ratio[std::to_string(d)] = to_string(v);
    return Json{{"system", to_json(b.system)},
                {"R", to_json(b.breaks.R)},
                {"S", to_json(b.breaks.S)},
                {"schedule", sched},
                {"extrema",
                 {{"min_f", to_string(e.min_f)},
                  {"argmin_f", to_string(e.argmin_f)},
                  {"max_f", to_string(e.max_f)},
                  {"argmax_f", to_string(e.argmax_f)},
                  {"f_at_t_plus", to_string(e.f_at_tplus)},
                  {"min_ratio", ratio}}}};
}

Json to_json(const ConstructionParams& p) {
    Json tau = Json::array();
    for (const auto& t : p.tau) tau.push_back(to_string(t));
    return Json{{"n", p.n},
                {"gamma", to_string(p.gamma)},
                {"tau", tau},
                {"delta", to_string(p.delta)},
                {"blocks", p.blocks},
                {"strict", p.strict}};
}

Json to_json(const Diagnostics& d, const Construction& c) {
    Json per = Json::array();
    for (const auto& b : d.per_block_min_f)
        per.push_back(Json{{"k", b.k}, {"i", b.i}, {"min_f", to_string(b.min_f)}, {"argmin_f", to_string(b.argmin_f)}});
    Json rmin = Json::array();
    for (const auto& [key, v] : d.ratio_min)
        rmin.push_back(Json{{"k", std::get<0>(key)}, {"i", std::get<1>(key)}, {"d", std::get<2>(key)}, {"value", to_string(v)}});
    Json rmin_i = Json::array();
    for (const auto& [key, v] : d.ratio_min_over_i)
        rmin_i.push_back(Json{{"k", key.first}, {"d", key.second}, {"value", to_string(v)}});
    Json relax = Json::array();
    for (const auto& r : c.beta.relaxations)
        relax.push_back(Json{{"k", r.k}, {"i", r.i}, {"bound", r.bound}, {"stated", to_string(r.stated)}, {"used", to_string(r.used)}});
    Json T = Json::array();
    for (int k = 1; k <= c.grid.K + 1; ++k) T.push_back(to_string(c.grid.Tk(k)));
    Json out{{"params", to_json(c.params)},
             {"T", T},
             {"per_block_min_f", per},
             {"global_min_f", to_string(d.global_min_f)},
             {"global_argmin_f", to_string(d.global_argmin_f)},
             {"max_f_tail", to_json(d.max_f_tail)},
             {"tail_increasing_from", d.tail_increasing_from ? Json(*d.tail_increasing_from) : Json()},
             {"ratio_min", rmin},
             {"ratio_min_over_i", rmin_i},
             {"ratio_target", to_json(d.ratio_target)},
             {"ratio_decay_ok", d.ratio_decay_ok},
             {"relaxations", relax}};
    if (d.epsilon) out["epsilon_float"] = double_json(*d.epsilon);
    return out;
}

Diagnostics diagnostics_from_json(const Json& j) {
    Diagnostics d;
    for (const auto& b : field(j, "per_block_min_f"))
        d.per_block_min_f.push_back(BlockMin{field(b, "k").get<int>(), field(b, "i").get<int>(),
                                             rational_from_json(field(b, "min_f")),
                                             rational_from_json(field(b, "argmin_f"))});
    d.global_min_f = rational_from_json(field(j, "global_min_f"));
    d.global_argmin_f = rational_from_json(field(j, "global_argmin_f"));
    d.max_f_tail = rationals_from_json(field(j, "max_f_tail"));
    if (!field(j, "tail_increasing_from").is_null()) d.tail_increasing_from = j.at("tail_increasing_from").get<int>();
    for (const auto& r : field(j, "ratio_min"))
        d.ratio_min[{field(r, "k").get<int>(), field(r, "i").get<int>(), field(r, "d").get<int>()}] =
            rational_from_json(field(r, "value"));
    for (const auto& r : field(j, "ratio_min_over_i"))
        d.ratio_min_over_i[{field(r, "k").get<int>(), field(r, "d").get<int>()}] = rational_from_json(field(r, "value"));
    d.ratio_target = rationals_from_json(field(j, "ratio_target"));
    d.ratio_decay_ok = field(j, "ratio_decay_ok").get<bool>();
    if (j.contains("epsilon_float")) {
        const auto& e = j.at("epsilon_float");
        d.epsilon = e.is_number() ? e.get<double>() : std::stod(e.get<std::string>());
    }
    return d;
}

Json to_json(const InequalityCheck& c) {
    return Json{{"name", c.name},
                {"d", c.d},
                {"lhs", to_string(c.lhs)},
                {"rhs", to_string(c.rhs)},
                {"holds", c.holds},
                {"equality", c.equality}};
}

Json to_json(const TauReport& r) {
    Json tf = Json::array(), th = Json::array();
    for (const auto& c : r.tau_form) tf.push_back(to_json(c));
    for (const auto& c : r.theta_form) th.push_back(to_json(c));
    return Json{{"ok", r.ok}, {"forms_agree", r.forms_agree}, {"violations", r.violations}, {"tau_form", tf}, {"theta_form", th}};
}

Json to_json(const TransferenceReport& r) {
    Json cs = Json::array();
    for (const auto& c : r.checks) cs.push_back(to_json(c));
    return Json{{"ok", r.ok},
                {"chain_matches_closed_form", r.chain_matches_closed_form},
                {"violations", r.violations},
                {"checks", cs}};
}

Json to_json(const MultiVector& m) {
    Json bl = Json::array();
    for (const auto& b : blades(m.dim(), m.grade())) {
        Json idx = Json::array();
        for (int i : b) idx.push_back(i + 1);
        bl.push_back(idx);
    }
    return Json{{"dim", m.dim()}, {"grade", m.grade()}, {"blades", bl}, {"coords", to_json(m.coords())}};
}

MultiVector multivector_from_json(const Json& j) {
    return MultiVector(field(j, "dim").get<int>(), field(j, "grade").get<int>(), rationals_from_json(field(j, "coords")));
}

Json to_json(const RationalSubspace& L) {
    return Json{{"n", L.n}, {"d", L.d}, {"plucker", to_json(L.plucker)}, {"height_sq", to_string(L.height_sq)}};
}

Json to_json(const std::vector<ApproxRecord>& records) {
    Json a = Json::array();
    for (const auto& r : records)
        a.push_back(Json{{"subspace", to_json(r.L)}, {"dp_sq", to_string(r.dp_sq)}, {"running_min", r.running_min}});
    return a;
}

Json to_json(const DirichletWitness& w) {
    return Json{{"Z", to_json(w.Z)},
                {"Y", to_json(w.Y)},
                {"X", to_json(w.X)},
                {"error", to_string(w.error)},
                {"lift_applicable", w.lift_applicable},
                {"lift_height_ok", w.lift_height_ok},
                {"lift_wedge_ok", w.lift_wedge_ok},
                {"sandwich_ok", w.sandwich_ok}};
}

namespace {

Json window_json(const Window& w) { return Json{{"lo_float", double_json(w.lo)}, {"hi_float", double_json(w.hi)}}; }

}  // namespace

Json to_json(const DiCheck& c) {
    Json out{{"consistent", c.consistent},
             {"margin_float", double_json(c.margin)},
             {"threshold_float", double_json(c.threshold)},
             {"inf_f_float", double_json(c.inf_f)},
             {"window", window_json(c.window)},
             {"label", c.label}};
    if (c.band)
        out["band"] = Json{{"threshold_hi_float", double_json(c.band->threshold_hi)},
                           {"threshold_lo_float", double_json(c.band->threshold_lo)},
                           {"in_band", c.band->in_band}};
    return out;
}

Json to_json(const TailStats& s) {
    Json q = Json::array();
    for (double v : s.quarter_inf) q.push_back(double_json(v));
    return Json{{"d", s.d},
                {"verdict", verdict_name(s.verdict)},
                {"window", window_json(s.window)},
                {"inf_f_float", double_json(s.inf_f)},
                {"sup_f_float", double_json(s.sup_f)},
                {"inf_s_float", double_json(s.inf_s)},
                {"sup_s_float", double_json(s.sup_s)},
                {"quarter_inf_float", q},
                {"trend_f_float", double_json(s.trend_f)},
                {"trend_s_float", double_json(s.trend_s)},
                {"label", s.label}};
}

Json to_json(const ExponentEstimate& e) {
    return Json{{"d", e.d},
                {"window", window_json(e.window)},
                {"ratio_min_float", double_json(e.ratio_min)},
                {"ratio_max_float", double_json(e.ratio_max)},
                {"omega_infinite", e.omega_infinite},
                {"omega_lower_float", double_json(e.omega_lower)},
                {"omega_hat_proxy_float", double_json(e.omega_hat_proxy)},
                {"omega_dirichlet_float", double_json(e.omega_dirichlet)},
                {"very_singular_flag", e.very_singular_flag},
                {"label", e.label}};
}

std::string samples_csv(const RoySystem& s) {
    std::ostringstream out;
    const int m = s.n + 1;
    out << "t";
    for (int i = 1; i <= m; ++i) out << ",P_" << i;
    out << ",t_float";
    for (int i = 1; i <= m; ++i) out << ",P_" << i << "_float";
    out << "\n";
    for (const auto& t : s.partition()) {
        const auto v = s.values_at(t);
        out << to_string(t);
        for (const auto& x : v) out << "," << to_string(x);
        out << "," << format_double(to_double(t));
        for (const auto& x : v) out << "," << format_double(to_double(x));
        out << "\n";
    }
    return out.str();
}

RoySystem roy_from_samples_csv(const std::string& text) {
    const auto lines = lines_of(text);
    if (lines.size() < 3) throw Error(Errc::ParseError, "samples CSV needs a header and at least two rows");
    const auto header = split(lines[0], ',');
    int m = 0;
    while (m + 1 < static_cast<int>(header.size()) && header[m + 1] == "P_" + std::to_string(m + 1)) ++m;
    if (header.empty() || header[0] != "t" || m < 2) throw Error(Errc::ParseError, "unexpected samples CSV header");
    std::vector<Rational> ts;
    std::vector<std::vector<Rational>> vals(m);
    for (size_t r = 1; r < lines.size(); ++r) {
        const auto cells = split(lines[r], ',');
        if (cells.size() != header.size()) throw Error(Errc::ParseError, "row " + std::to_string(r) + " has wrong width");
        ts.push_back(parse_rational(cells[0]));
        for (int i = 0; i < m; ++i) vals[i].push_back(parse_rational(cells[i + 1]));
    }
    std::vector<PLMap> comps;
    for (int i = 0; i < m; ++i) comps.push_back(PLMap(ts, vals[i]).normalized());
    return RoySystem(m - 1, std::move(comps));
}

std::string profile_csv(const Profile& p) {
    std::ostringstream out;
    const int m = p.n + 1;
    out << "Q,t";
    for (const char* name : {"lambda_", "L_", "g_"})
        for (int i = 1; i <= m; ++i) out << "," << name << i;
    out << "\n";
    for (const auto& row : p.rows) {
        out << to_string(row.Q) << "," << format_double(row.t);
        for (const auto& l : row.lambda) out << "," << to_string(l);
        for (double L : row.L) out << "," << format_double(L);
        for (double g : row.g) out << "," << format_double(g);
        out << "\n";
    }
    return out.str();
}

Profile profile_from_csv(const std::string& text) {
    const auto lines = lines_of(text);
    if (lines.empty()) throw Error(Errc::ParseError, "empty profile CSV");
    const auto header = split(lines[0], ',');
    if (header.size() < 2 || header[0] != "Q" || header[1] != "t" || (header.size() - 2) % 3 != 0)
        throw Error(Errc::ParseError, "unexpected profile CSV header");
    const int m = static_cast<int>((header.size() - 2) / 3);
    if (m < 2) throw Error(Errc::ParseError, "profile CSV needs at least two minima columns");
    for (int i = 0; i < m; ++i)
        if (header[2 + i] != "lambda_" + std::to_string(i + 1)) throw Error(Errc::ParseError, "unexpected profile CSV header");
    Profile p;
    p.n = m - 1;
    for (size_t r = 1; r < lines.size(); ++r) {
        const auto cells = split(lines[r], ',');
        if (cells.size() != header.size()) throw Error(Errc::ParseError, "row " + std::to_string(r) + " has wrong width");
        std::vector<Rational> lambda;
        for (int i = 0; i < m; ++i) lambda.push_back(parse_rational(cells[2 + i]));
        p.rows.push_back(make_row(p.n, parse_rational(cells[0]), std::move(lambda)));
    }
    return p;
}

std::string profile_cache_key(int n, const std::vector<Rational>& x, const Rational& Q) {
    std::string key = std::to_string(n) + "|";
    for (size_t i = 0; i < x.size(); ++i) key += (i ? "," : "") + to_string(x[i]);
    key += "|" + to_string(Q);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : key) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ProfileCache::ProfileCache(std::string dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

std::optional<std::vector<Rational>> ProfileCache::load(int n, const std::vector<Rational>& x, const Rational& Q) const {
    const auto path = std::filesystem::path(dir_) / (profile_cache_key(n, x, Q) + ".csv");
    if (!std::filesystem::exists(path)) return std::nullopt;
    try {
        Profile p = profile_from_csv(read_file(path.string()));
        if (p.n != n || p.rows.size() != 1 || p.rows[0].Q != Q) return std::nullopt;
        return p.rows[0].lambda;
    } catch (const Error&) {
        return std::nullopt;
    }
}

void ProfileCache::store(int n, const std::vector<Rational>& x, const ProfileRow& row) const {
    Profile p{n, x, {row}};
    const auto path = std::filesystem::path(dir_) / (profile_cache_key(n, x, row.Q) + ".csv");
    const auto tmp = path.string() + ".tmp";
    write_file(tmp, profile_csv(p));
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::ParseError, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::ParseError, "cannot write '" + path + "'");
    out << content;
}

}  // namespace pgn
