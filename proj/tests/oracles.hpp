#pragma once

#include <map>
#include <optional>
#include <vector>

#include "pgn/blocks.hpp"
#include "pgn/exterior.hpp"

namespace pgn::testing {

// Breakpoints straight from the defining sums.
inline BlockBreakpoints oracle_breaks(const BlockParams& p) {
    const int n = p.n;
    const auto& am = p.a_minus;
    const auto& ap = p.a_plus;
    BlockBreakpoints b;
    for (int d = 1; d <= n; ++d) {
        Rational s = d * am[d - 1];
        for (int j = d + 1; j <= n + 1; ++j) s += am[j - 1];
        b.R.push_back(s * p.t_minus);
    }
    b.R.push_back((n + 1) * am[n] * p.t_minus - n * (n + 1) * p.gamma);
    b.R.push_back((n + 1) * am[n] * p.t_minus - (n + 1) * p.gamma);
    b.S.push_back((n + 1) * ap[0] * p.t_plus + (n * n + n) * p.gamma);
    for (int d = 1; d <= n; ++d) {
        Rational s = (n + 1 - d) * ap[d];
        for (int j = 1; j <= d; ++j) s += ap[j - 1];
        b.S.push_back(s * p.t_plus);
    }
    return b;
}

// Dense scan: every breakpoint, every midpoint and a few interior rationals per piece.
inline std::vector<Rational> scan_points(const RoySystem& s) {
    auto part = s.partition();
    std::vector<Rational> pts(part);
    for (size_t k = 0; k + 1 < part.size(); ++k)
        for (int m = 1; m < 8; ++m) pts.push_back(part[k] + (part[k + 1] - part[k]) * m / 8);
    return pts;
}

inline Rational scan_min_f(const RoySystem& s, Rational* arg = nullptr) {
    std::optional<Rational> best;
    for (const auto& t : scan_points(s)) {
        Rational f = t / (s.n + 1) - s.components[0](t);
        if (!best || f < *best || (f == *best && arg && t < *arg)) {
            best = f;
            if (arg) *arg = t;
        }
    }
    return *best;
}

inline Rational scan_min_ratio(const RoySystem& s, int d) {
    std::optional<Rational> best;
    for (const auto& t : scan_points(s)) {
        Rational v = 0;
        for (int j = 0; j < d; ++j) v += s.components[j](t);
        v /= t;
        if (!best || v < *best) best = v;
    }
    return *best;
}

inline Rational prefix(const std::vector<Rational>& a, int d) {
    Rational s = 0;
    for (int j = 0; j < d; ++j) s += a[j];
    return s;
}

// Expansion along the first factor: coefficient on S is sum_{k} (-1)^k v_{S_k} X_{S minus S_k}.
inline MultiVector wedge_oracle(const std::vector<Rational>& v, const MultiVector& x) {
    const int dim = x.dim(), g = x.grade();
    const auto& lower = blades(dim, g);
    std::map<std::vector<int>, Rational> lx;
    for (size_t i = 0; i < lower.size(); ++i) lx[lower[i]] = x.at(i);
    const auto& upper = blades(dim, g + 1);
    std::vector<Rational> out(upper.size(), Rational(0));
    for (size_t s = 0; s < upper.size(); ++s) {
        for (size_t k = 0; k < upper[s].size(); ++k) {
            std::vector<int> rest = upper[s];
            rest.erase(rest.begin() + static_cast<long>(k));
            Rational term = v[upper[s][k]] * lx[rest];
            out[s] += k % 2 ? Rational(-term) : term;
        }
    }
    return MultiVector(dim, g + 1, out);
}

inline Rational max_abs(const MultiVector& m) {
    Rational r = 0;
    for (const auto& c : m.coords()) r = std::max(r, Rational(abs(c)));
    return r;
}

inline bool all_integer(const MultiVector& m) {
    for (const auto& c : m.coords())
        if (c.get_den() != 1) return false;
    return true;
}

// Independent reading of the Dirichlet inequality on a witness.
inline bool dirichlet_holds(const std::vector<Rational>& x, int d, const Rational& N, const DirichletWitness& w) {
    const int n = static_cast<int>(x.size());
    if (w.Z.grade() != d || w.Y.grade() != d + 1 || !all_integer(w.Z) || !all_integer(w.Y)) return false;
    if (w.Z.is_zero() || max_abs(w.Z) > N) return false;
    MultiVector xz = d == 0 ? MultiVector::vector(x) * w.Z.at(0) : wedge_oracle(x, w.Z);
    Rational err = max_abs(xz + w.Y);
    if (err != w.error) return false;
    Rational lhs = 1, rhs = 1;
    for (int i = 0; i < n - d; ++i) lhs *= err;
    for (int i = 0; i < d + 1; ++i) rhs *= N;
    return lhs * rhs <= 1;
}

}  // namespace pgn::testing
