#include "pgn/blocks.hpp"

#include <utility>

#include "pgn/errors.hpp"

namespace pgn {

std::vector<ParamViolation> validate_block_params(const BlockParams& p) {
    std::vector<ParamViolation> out;
    auto bad = [&](std::string c, std::string m) { out.push_back({std::move(c), std::move(m)}); };
    if (p.n < 2) {
        bad("n", "n must be at least 2");
        return out;
    }
    const size_t m = static_cast<size_t>(p.n) + 1;
    if (p.a_minus.size() != m || p.a_plus.size() != m) {
        bad("shape", "a_minus and a_plus need n+1 entries");
        return out;
    }
    if (p.gamma <= 0) bad("gamma", "gamma must be positive");
    if (p.t_minus <= 0) bad("t_minus", "T_- must be positive");
    if (!(p.t_minus < p.t_plus)) bad("t_order", "need T_- < T_+");

    const Rational gap = 4 * p.n * p.n * p.gamma;
    auto check_list = [&](const std::vector<Rational>& a, const Rational& T, const char* name) {
        Rational sum = 0;
        for (size_t j = 0; j < m; ++j) {
            sum += a[j];
            if (a[j] <= 0) bad(std::string(name) + ".positive", "entry " + std::to_string(j + 1) + " not positive");
            if (j > 0 && !(a[j - 1] < a[j]))
                bad(std::string(name) + ".increasing", "entries " + std::to_string(j) + "," + std::to_string(j + 1) +
                                                           " not strictly increasing");
            if (j > 0 && (a[j] - a[j - 1]) * T < gap)
                bad(std::string(name) + ".spacing", "(a^" + std::to_string(j + 1) + " - a^" + std::to_string(j) +
                                                        ")T = " + to_string((a[j] - a[j - 1]) * T) + " < 4n^2 gamma = " +
                                                        to_string(gap));
        }
        if (sum != 1) bad(std::string(name) + ".sum", "entries sum to " + to_string(sum));
    };
    check_list(p.a_minus, p.t_minus, "a_minus");
    check_list(p.a_plus, p.t_plus, "a_plus");

    const Rational lhs = p.a_plus[0] * p.t_plus;
    const Rational rhs = p.a_minus[p.n] * p.t_minus - (p.n + 1) * p.gamma;
    if (lhs != rhs)
        bad("junction", "a_+^1 T_+ = " + to_string(lhs) + " but a_-^{n+1} T_- - (n+1)gamma = " + to_string(rhs));
    return out;
}

Block build_block(const BlockParams& p) {
    auto viol = validate_block_params(p);
    if (!viol.empty()) {
        std::string msg;
        for (const auto& v : viol) msg += (msg.empty() ? "" : "; ") + v.constraint + ": " + v.message;
        throw Error(Errc::InvalidParams, msg);
    }
    const int n = p.n;
    const auto& am = p.a_minus;
    const auto& ap = p.a_plus;
    const Rational& Tm = p.t_minus;
    const Rational& Tp = p.t_plus;
    const Rational& g = p.gamma;
    // 1-based accessors
    auto a_m = [&](int j) -> const Rational& { return am[j - 1]; };
    auto a_p = [&](int j) -> const Rational& { return ap[j - 1]; };

    BlockBreakpoints br;
    for (int d = 1; d <= n; ++d) {
        Rational s = d * a_m(d);
        for (int j = d + 1; j <= n + 1; ++j) s += a_m(j);
        br.R.push_back(s * Tm);
    }
    br.R.push_back((n + 1) * a_m(n + 1) * Tm - n * (n + 1) * g);
    br.R.push_back((n + 1) * a_m(n + 1) * Tm - (n + 1) * g);
    br.S.push_back((n + 1) * a_p(1) * Tp + (n * n + n) * g);
    for (int d = 1; d <= n; ++d) {
        Rational s = (n + 1 - d) * a_p(d + 1);
        for (int j = 1; j <= d; ++j) s += a_p(j);
        br.S.push_back(s * Tp);
    }
    if (br.S[0] != br.R[n + 1])
        throw Error(Errc::InvalidParams, "S_0 != R_{n+2}: " + to_string(br.S[0]) + " vs " + to_string(br.R[n + 1]));

    // Node values for every component at R_1..R_{n+2}, S_1..S_n.
    std::vector<std::pair<Rational, std::vector<Rational>>> nodes;
    std::vector<ScheduleStage> schedule;
    auto R = [&](int d) -> const Rational& { return br.R[d - 1]; };
    auto S = [&](int d) -> const Rational& { return br.S[d]; };

    std::vector<Rational> v(n + 1);
    for (int j = 1; j <= n + 1; ++j) v[j - 1] = a_m(j) * Tm;
    nodes.emplace_back(R(1), v);
    for (int d = 1; d <= n - 1; ++d) {
        for (int j = 1; j <= d; ++j) v[j - 1] = a_m(d + 1) * Tm;
        nodes.emplace_back(R(d + 1), v);
        schedule.push_back({R(d), R(d + 1), {1, d}});
    }
    for (int j = 1; j <= n; ++j) v[j - 1] = a_p(1) * Tp;
    nodes.emplace_back(R(n + 1), v);
    schedule.push_back({R(n), R(n + 1), {1, n}});
    for (int j = 2; j <= n + 1; ++j) v[j - 1] = a_m(n + 1) * Tm;
    nodes.emplace_back(R(n + 2), v);
    schedule.push_back({R(n + 1), R(n + 2), {2, n}});
    for (int j = 2; j <= n + 1; ++j) v[j - 1] = a_p(2) * Tp;
    nodes.emplace_back(S(1), v);
    schedule.push_back({S(0), S(1), {2, n + 1}});
    for (int d = 1; d <= n - 1; ++d) {
        for (int j = 1; j <= n + 1; ++j) v[j - 1] = j <= d + 1 ? a_p(j) * Tp : a_p(d + 2) * Tp;
        nodes.emplace_back(S(d + 1), v);
        schedule.push_back({S(d), S(d + 1), {d + 2, n + 1}});
    }

    std::vector<PLMap> comps;
    for (int j = 0; j <= n; ++j) {
        std::vector<std::pair<Rational, Rational>> cn;
        for (const auto& [t, vals] : nodes) cn.emplace_back(t, vals[j]);
        comps.push_back(PLMap::from_nodes(cn));
    }
    return Block{RoySystem(n, std::move(comps)), std::move(br), std::move(schedule)};
}

bool schedule_matches(const Block& b) {
    const auto part = b.system.partition();
    const auto groups = slope_groups(b.system);
    for (const auto& st : b.schedule) {
        if (st.t_lo == st.t_hi) continue;
        for (size_t k = 0; k + 1 < part.size(); ++k) {
            if (part[k] < st.t_lo || part[k + 1] > st.t_hi) continue;
            if (!groups[k] || !(*groups[k] == st.group)) return false;
        }
    }
    return true;
}

BlockExtrema block_extrema(const Block& b, const BlockParams& p) {
    const auto& comps = b.system.components;
    const int n = b.system.n;
    std::vector<Rational> coeffs(n + 1, Rational(0));
    coeffs[0] = -1;
    const Rational ct = frac(1, n + 1);
    Extremum mn = extremize(comps, ct, coeffs, Sense::Min);
    Extremum mx = extremize(comps, ct, coeffs, Sense::Max);

    BlockExtrema out;
    out.min_f = mn.value;
    out.argmin_f = mn.t;
    out.max_f = mx.value;
    out.argmax_f = mx.t;
    out.f_at_tplus = (ct - p.a_plus[0]) * p.t_plus;

    // Each ratio is linear-fractional on a piece, so its minimum sits on the partition.
    const auto part = b.system.partition();
    for (int d = 1; d <= n; ++d) {
        std::optional<Rational> best;
        for (const auto& t : part) {
            Rational s = 0;
            for (int j = 0; j < d; ++j) s += comps[j](t);
            Rational r = s / t;
            if (!best || r < *best) best = r;
        }
        out.min_ratio[d] = *best;
    }
    return out;
}

}  // namespace pgn
