#include "pgn/roy_system.hpp"

#include "pgn/errors.hpp"

namespace pgn {

RoySystem::RoySystem(int n_, std::vector<PLMap> comps) : n(n_), components(std::move(comps)) {
    if (n < 1) throw Error(Errc::InvalidParams, "n must be positive");
    if (components.size() != static_cast<size_t>(n + 1))
        throw Error(Errc::DimensionMismatch, "expected " + std::to_string(n + 1) + " components");
    for (const auto& c : components)
        if (c.lo() != lo() || c.hi() != hi())
            throw Error(Errc::DomainMismatch, "components do not share a domain");
    if (lo() < 0) throw Error(Errc::InvalidParams, "domain must lie in [0, inf)");
}

std::vector<Rational> RoySystem::values_at(const Rational& t) const {
    std::vector<Rational> v;
    v.reserve(components.size());
    for (const auto& c : components) v.push_back(c(t));
    return v;
}

RoySystem RoySystem::restricted(const Rational& a, const Rational& b) const {
    std::vector<PLMap> comps;
    for (const auto& c : components) comps.push_back(c.restricted(a, b));
    return RoySystem(n, std::move(comps));
}

const char* axiom_name(Axiom a) {
    switch (a) {
        case Axiom::Order: return "order";
        case Axiom::Sum: return "sum";
        case Axiom::SlopeGroup: return "slope-group";
        case Axiom::Kink: return "kink";
    }
    return "?";
}

namespace {

struct PieceInfo {
    std::optional<SlopeGroup> group;
    std::string problem;
};

// vl, vr: component values at the piece ends; slopes per component.
PieceInfo classify_piece(const std::vector<Rational>& vl, const std::vector<Rational>& vr,
                         const std::vector<Rational>& slopes) {
    const int m = static_cast<int>(slopes.size());
    int first = -1, last = -1;
    for (int i = 0; i < m; ++i)
        if (slopes[i] != 0) {
            if (first < 0) first = i;
            last = i;
        }
    if (first < 0) return {std::nullopt, "no component moves"};
    const Rational expected = frac(1, last - first + 1);
    for (int i = first; i <= last; ++i) {
        if (slopes[i] != expected)
            return {std::nullopt, "component " + std::to_string(i + 1) + " has slope " + to_string(slopes[i]) +
                                      ", group " + std::to_string(first + 1) + ".." + std::to_string(last + 1) +
                                      " needs " + to_string(expected)};
        if (vl[i] != vl[first] || vr[i] != vr[first])
            return {std::nullopt, "components " + std::to_string(first + 1) + " and " + std::to_string(i + 1) +
                                      " move together but do not coincide"};
    }
    return {SlopeGroup{first + 1, last + 1}, {}};
}

}  // namespace

std::vector<std::optional<SlopeGroup>> slope_groups(const RoySystem& s) {
    auto part = s.partition();
    std::vector<std::optional<SlopeGroup>> out;
    std::vector<Rational> prev = s.values_at(part[0]);
    for (size_t k = 0; k + 1 < part.size(); ++k) {
        std::vector<Rational> next = s.values_at(part[k + 1]);
        std::vector<Rational> slopes;
        Rational len = part[k + 1] - part[k];
        for (size_t i = 0; i < next.size(); ++i) slopes.push_back((next[i] - prev[i]) / len);
        out.push_back(classify_piece(prev, next, slopes).group);
        prev = std::move(next);
    }
    return out;
}

AxiomReport validate_roy(const RoySystem& s) {
    AxiomReport rep;
    auto add = [&](Axiom a, const Rational& lo, const Rational& hi, std::string msg) {
        rep.violations.push_back(Violation{a, lo, hi, std::move(msg)});
    };
    auto check_point = [&](const Rational& t, const std::vector<Rational>& v, const Rational& lo, const Rational& hi) {
        if (v[0] < 0) add(Axiom::Order, lo, hi, "P_1 = " + to_string(v[0]) + " < 0 at t=" + to_string(t));
        for (size_t i = 1; i < v.size(); ++i)
            if (v[i - 1] > v[i])
                add(Axiom::Order, lo, hi,
                    "P_" + std::to_string(i) + " > P_" + std::to_string(i + 1) + " at t=" + to_string(t));
        Rational sum = 0;
        for (const auto& x : v) sum += x;
        if (sum != t)
            add(Axiom::Sum, lo, hi, "sum of components is " + to_string(sum) + " at t=" + to_string(t));
    };

    const auto part = s.partition();
    std::vector<std::vector<Rational>> vals;
    vals.reserve(part.size());
    for (const auto& t : part) {
        vals.push_back(s.values_at(t));
        check_point(t, vals.back(), t, t);
    }

    std::vector<std::optional<SlopeGroup>> groups;
    for (size_t k = 0; k + 1 < part.size(); ++k) {
        const Rational mid = (part[k] + part[k + 1]) / 2;
        check_point(mid, s.values_at(mid), part[k], part[k + 1]);
        std::vector<Rational> slopes;
        const Rational len = part[k + 1] - part[k];
        for (size_t i = 0; i < vals[k].size(); ++i) slopes.push_back((vals[k + 1][i] - vals[k][i]) / len);
        PieceInfo info = classify_piece(vals[k], vals[k + 1], slopes);
        if (!info.group) add(Axiom::SlopeGroup, part[k], part[k + 1], info.problem);
        groups.push_back(info.group);
    }

    for (size_t k = 1; k + 1 < part.size(); ++k) {
        const auto& left = groups[k - 1];
        const auto& right = groups[k];
        if (!left || !right || *left == *right) continue;  // differentiable or already reported
        const int r1 = left->r1, s2 = right->r2;
        if (r1 > s2) continue;
        const auto& v = vals[k];
        for (int i = r1; i < s2; ++i)
            if (v[i - 1] != v[i]) {
                add(Axiom::Kink, part[k], part[k],
                    "left group " + std::to_string(left->r1) + ".." + std::to_string(left->r2) + ", right group " +
                        std::to_string(right->r1) + ".." + std::to_string(right->r2) + " but P_" + std::to_string(i) +
                        " != P_" + std::to_string(i + 1) + " at t=" + to_string(part[k]));
                break;
            }
    }
    rep.ok = rep.violations.empty();
    return rep;
}

Rational roy_constant(int n) { return Rational(5 * (n + 1) * (n + 1) * (n + 10)); }

Rational nonequivalence_threshold(int n) { return 2 * roy_constant(n); }

NonEquivalence nonequivalent(const RoySystem& a, const RoySystem& b) {
    if (a.n != b.n) throw Error(Errc::DimensionMismatch, "systems have different n");
    if (a.lo() != b.lo() || a.hi() != b.hi()) throw Error(Errc::DomainMismatch, "systems have different domains");
    std::vector<PLMap> all(a.components);
    all.insert(all.end(), b.components.begin(), b.components.end());
    NonEquivalence out{false, std::nullopt, Rational(0)};
    for (const auto& t : merged_breakpoints(all)) {
        Rational gap = 0;
        for (size_t i = 0; i < a.components.size(); ++i) {
            Rational d = abs(a.components[i](t) - b.components[i](t));
            if (d > gap) gap = d;
        }
        if (gap > out.gap) {
            out.gap = gap;
            out.witness_t = t;
        }
    }
    out.answer = out.gap > nonequivalence_threshold(a.n);
    return out;
}

}  // namespace pgn
