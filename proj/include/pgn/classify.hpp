#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pgn/minima.hpp"
#include "pgn/transference.hpp"

namespace pgn {

struct Window {
    double lo = 0;
    double hi = 0;
};

// Upper half of the profile's t range.
Window default_window(const Profile& p);

inline constexpr const char* kHeuristicLabel = "heuristic at finite precision";

// f(t) = t/(n+1) - L_1(t), one entry per profile row.
std::vector<double> f_series(const Profile& p);
// s_d(t) = (n-d)t/(n+1) - (L_1 + ... + L_{n-d})(t).
std::vector<double> s_series(const Profile& p, int d);

struct DiBand {
    double threshold_hi;  // -log(eps)/(n+1)
    double threshold_lo;  // -log(eps e^{-10(n+1)^2(n+10)})/(n+1)
    bool in_band;         // inf f lies in [threshold_hi, threshold_lo)
};

struct DiCheck {
    bool consistent = false;
    double margin = 0;     // inf_f + log(eps)/(n+1)
    double threshold = 0;  // -log(eps)/(n+1)
    double inf_f = 0;
    Window window;
    std::optional<DiBand> band;
    std::string label = kHeuristicLabel;
};

DiCheck di_check(const Profile& p, const Rational& epsilon, std::optional<Window> window = std::nullopt,
                 bool with_band = false);

enum class Verdict { BadConsistent, SingConsistent, Neither };
const char* verdict_name(Verdict v);

struct ClassifyConfig {
    double bad_cap_offset = 2.0;  // Bad cap = inf + offset
    double sing_step = 0.2;       // minimum rise of the quarter infima
};

struct TailStats {
    Window window;
    int d = 0;
    double inf_f = 0, sup_f = 0;
    double inf_s = 0, sup_s = 0;
    std::vector<double> quarter_inf;  // inf of s_d over four equal sub-windows
    double trend_f = 0;               // least-squares slope of f
    double trend_s = 0;               // least-squares slope of s_d
    Verdict verdict = Verdict::Neither;
    std::string label = kHeuristicLabel;
};

TailStats bad_sing_stat(const Profile& p, int d, std::optional<Window> window = std::nullopt,
                        const ClassifyConfig& cfg = {});

struct ExponentEstimate {
    int d = 0;
    Window window;
    double ratio_min = 0;  // min of (L_1 + ... + L_{n-d})/t
    double ratio_max = 0;
    bool omega_infinite = false;
    double omega_lower = 0;      // 1/ratio_min - 1
    double omega_hat_proxy = 0;  // 1/ratio_max - 1
    double omega_dirichlet = 0;  // (d+1)/(n-d)
    bool very_singular_flag = false;
    std::string label = kHeuristicLabel;
};

ExponentEstimate exponent_estimate(const Profile& p, int d, std::optional<Window> window = std::nullopt);

}  // namespace pgn
