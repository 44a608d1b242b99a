#include "pgn/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pgn/errors.hpp"
#include "pgn/roy_system.hpp"

namespace pgn {

Window default_window(const Profile& p) {
    if (p.rows.empty()) throw Error(Errc::InsufficientData, "empty profile");
    double lo = p.rows.front().t, hi = p.rows.back().t;
    return {(lo + hi) / 2, hi};
}

std::vector<double> f_series(const Profile& p) {
    std::vector<double> out;
    for (const auto& r : p.rows) out.push_back(r.t / (p.n + 1) - r.L[0]);
    return out;
}

std::vector<double> s_series(const Profile& p, int d) {
    if (d < 0 || d > p.n - 1) throw Error(Errc::InvalidParams, "d must lie in [0, n-1]");
    std::vector<double> out;
    for (const auto& r : p.rows) {
        double sum = 0;
        for (int i = 0; i < p.n - d; ++i) sum += r.L[i];
        out.push_back((p.n - d) * r.t / (p.n + 1) - sum);
    }
    return out;
}

namespace {

std::vector<size_t> rows_in(const Profile& p, const Window& w) {
    const double eps = 1e-12;
    std::vector<size_t> idx;
    for (size_t i = 0; i < p.rows.size(); ++i)
        if (p.rows[i].t >= w.lo - eps && p.rows[i].t <= w.hi + eps) idx.push_back(i);
    return idx;
}

Window resolve(const Profile& p, std::optional<Window> w) {
    Window win = w ? *w : default_window(p);
    if (win.lo > win.hi) throw Error(Errc::InvalidParams, "window lower end exceeds upper end");
    if (rows_in(p, win).empty()) throw Error(Errc::InsufficientData, "no profile rows inside the window");
    return win;
}

double slope(const Profile& p, const std::vector<size_t>& idx, const std::vector<double>& v) {
    if (idx.size() < 2) return 0;
    double mt = 0, mv = 0;
    for (auto i : idx) mt += p.rows[i].t, mv += v[i];
    mt /= idx.size();
    mv /= idx.size();
    double num = 0, den = 0;
    for (auto i : idx) {
        num += (p.rows[i].t - mt) * (v[i] - mv);
        den += (p.rows[i].t - mt) * (p.rows[i].t - mt);
    }
    return den > 0 ? num / den : 0;
}

}  // namespace

DiCheck di_check(const Profile& p, const Rational& epsilon, std::optional<Window> window, bool with_band) {
    if (epsilon <= 0 || epsilon >= 1) throw Error(Errc::InvalidParams, "epsilon must lie in (0, 1)");
    DiCheck out;
    out.window = resolve(p, window);
    const auto f = f_series(p);
    const auto idx = rows_in(p, out.window);
    out.inf_f = std::numeric_limits<double>::infinity();
    for (auto i : idx) out.inf_f = std::min(out.inf_f, f[i]);
    const double log_eps = std::log(to_double(epsilon));
    out.threshold = -log_eps / (p.n + 1);
    out.margin = out.inf_f + log_eps / (p.n + 1);
    out.consistent = out.margin >= 0;
    if (with_band) {
        double widen = to_double(nonequivalence_threshold(p.n)) / (p.n + 1);
        DiBand band{out.threshold, out.threshold + widen, false};
        band.in_band = out.inf_f >= band.threshold_hi && out.inf_f < band.threshold_lo;
        out.band = band;
    }
    return out;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::BadConsistent: return "Bad-consistent";
        case Verdict::SingConsistent: return "Sing-consistent";
        case Verdict::Neither: return "neither";
    }
    return "?";
}

TailStats bad_sing_stat(const Profile& p, int d, std::optional<Window> window, const ClassifyConfig& cfg) {
    TailStats ts;
    ts.d = d;
    ts.window = resolve(p, window);
    const auto f = f_series(p);
    const auto s = s_series(p, d);
    const auto idx = rows_in(p, ts.window);
    ts.inf_f = ts.inf_s = std::numeric_limits<double>::infinity();
    ts.sup_f = ts.sup_s = -std::numeric_limits<double>::infinity();
    for (auto i : idx) {
        ts.inf_f = std::min(ts.inf_f, f[i]);
        ts.sup_f = std::max(ts.sup_f, f[i]);
        ts.inf_s = std::min(ts.inf_s, s[i]);
        ts.sup_s = std::max(ts.sup_s, s[i]);
    }
    ts.trend_f = slope(p, idx, f);
    ts.trend_s = slope(p, idx, s);

    const double width = (ts.window.hi - ts.window.lo) / 4;
    bool quarters_ok = width > 0;
    for (int q = 0; q < 4 && quarters_ok; ++q) {
        Window sub{ts.window.lo + q * width, q == 3 ? ts.window.hi : ts.window.lo + (q + 1) * width};
        double m = std::numeric_limits<double>::infinity();
        for (auto i : idx) {
            double t = p.rows[i].t;
            bool inside = t >= sub.lo - 1e-12 && (q == 3 ? t <= sub.hi + 1e-12 : t < sub.hi - 1e-12);
            if (inside) m = std::min(m, s[i]);
        }
        if (std::isinf(m)) quarters_ok = false;
        ts.quarter_inf.push_back(m);
    }
    if (!quarters_ok) return ts;

    bool sing = true;
    for (int q = 0; q < 3; ++q) sing = sing && ts.quarter_inf[q + 1] >= ts.quarter_inf[q] + cfg.sing_step;
    bool bad = ts.sup_s <= ts.inf_s + cfg.bad_cap_offset && ts.quarter_inf[3] <= ts.quarter_inf[0] + cfg.sing_step;
    if (sing)
        ts.verdict = Verdict::SingConsistent;
    else if (bad)
        ts.verdict = Verdict::BadConsistent;
    return ts;
}

ExponentEstimate exponent_estimate(const Profile& p, int d, std::optional<Window> window) {
    if (d < 0 || d > p.n - 1) throw Error(Errc::InvalidParams, "d must lie in [0, n-1]");
    if (p.rows.size() < 10) throw Error(Errc::InsufficientData, "exponent estimate needs at least 10 profile rows");
    ExponentEstimate e;
    e.d = d;
    e.window = resolve(p, window);
    e.omega_dirichlet = static_cast<double>(d + 1) / (p.n - d);
    e.ratio_min = std::numeric_limits<double>::infinity();
    e.ratio_max = -std::numeric_limits<double>::infinity();
    for (auto i : rows_in(p, e.window)) {
        const auto& r = p.rows[i];
        if (r.t <= 0) continue;
        double sum = 0;
        for (int k = 0; k < p.n - d; ++k) sum += r.L[k];
        e.ratio_min = std::min(e.ratio_min, sum / r.t);
        e.ratio_max = std::max(e.ratio_max, sum / r.t);
    }
    auto invert = [](double r) { return r <= 0 ? std::numeric_limits<double>::infinity() : 1 / r - 1; };
    e.omega_lower = invert(e.ratio_min);
    e.omega_infinite = std::isinf(e.omega_lower);
    e.omega_hat_proxy = invert(e.ratio_max);
    e.very_singular_flag = e.omega_hat_proxy > e.omega_dirichlet;
    return e;
}

}  // namespace pgn
