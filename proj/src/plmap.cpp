#include "pgn/plmap.hpp"

#include <algorithm>

#include "pgn/errors.hpp"

namespace pgn {

PLMap::PLMap(std::vector<Rational> breakpoints, std::vector<Rational> values)
    : bp_(std::move(breakpoints)), val_(std::move(values)) {
    if (bp_.size() != val_.size())
        throw Error(Errc::InvalidParams, "breakpoints and values differ in length");
    if (bp_.size() < 2) throw Error(Errc::InvalidParams, "a PLMap needs at least 2 breakpoints");
    for (size_t k = 1; k < bp_.size(); ++k)
        if (!(bp_[k - 1] < bp_[k]))
            throw Error(Errc::InvalidParams, "breakpoints not strictly increasing at index " + std::to_string(k));
}

PLMap PLMap::from_nodes(std::span<const std::pair<Rational, Rational>> nodes) {
    std::vector<Rational> bp, val;
    for (const auto& [t, v] : nodes) {
        if (!bp.empty() && bp.back() == t) {
            if (val.back() != v)
                throw Error(Errc::DiscontinuousJoin, "two values at t=" + to_string(t));
            continue;
        }
        bp.push_back(t);
        val.push_back(v);
    }
    return PLMap(std::move(bp), std::move(val));
}

size_t PLMap::piece_of(const Rational& t) const {
    // Index k with bp_[k] <= t < bp_[k+1], clamped to the last piece at hi.
    auto it = std::upper_bound(bp_.begin(), bp_.end(), t);
    size_t k = static_cast<size_t>(it - bp_.begin());
    if (k == 0) return 0;
    return std::min(k - 1, pieces() - 1);
}

Rational PLMap::slope(size_t piece) const {
    return (val_[piece + 1] - val_[piece]) / (bp_[piece + 1] - bp_[piece]);
}

Rational PLMap::operator()(const Rational& t) const {
    if (t < lo() || t > hi())
        throw Error(Errc::OutOfDomain, "t=" + to_string(t) + " outside [" + to_string(lo()) + ", " + to_string(hi()) + "]");
    size_t k = piece_of(t);
    if (t == bp_[k]) return val_[k];
    if (t == bp_[k + 1]) return val_[k + 1];
    return val_[k] + slope(k) * (t - bp_[k]);
}

PLMap::Evaluation PLMap::eval_with_slopes(const Rational& t) const {
    Evaluation e{(*this)(t), std::nullopt, std::nullopt};
    size_t k = piece_of(t);
    if (t == bp_[k]) {
        if (k > 0) e.slope_left = slope(k - 1);
        e.slope_right = slope(k);
    } else if (t == bp_[k + 1]) {  // only at hi
        e.slope_left = slope(k);
    } else {
        e.slope_left = e.slope_right = slope(k);
    }
    return e;
}

PLMap PLMap::restricted(const Rational& a, const Rational& b) const {
    if (a < lo() || b > hi() || !(a < b))
        throw Error(Errc::OutOfDomain, "restriction [" + to_string(a) + ", " + to_string(b) + "] not inside domain");
    std::vector<Rational> bp{a}, val{(*this)(a)};
    for (size_t k = 0; k < bp_.size(); ++k)
        if (bp_[k] > a && bp_[k] < b) {
            bp.push_back(bp_[k]);
            val.push_back(val_[k]);
        }
    bp.push_back(b);
    val.push_back((*this)(b));
    return PLMap(std::move(bp), std::move(val));
}

PLMap PLMap::refined(std::span<const Rational> ts) const {
    std::vector<Rational> all(bp_);
    for (const auto& t : ts) {
        if (t < lo() || t > hi()) throw Error(Errc::OutOfDomain, "refinement point outside domain");
        all.push_back(t);
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::vector<Rational> val;
    val.reserve(all.size());
    for (const auto& t : all) val.push_back((*this)(t));
    return PLMap(std::move(all), std::move(val));
}

PLMap PLMap::normalized() const {
    std::vector<Rational> bp{bp_.front()}, val{val_.front()};
    for (size_t k = 1; k + 1 < bp_.size(); ++k) {
        if (slope(k - 1) == slope(k)) continue;
        bp.push_back(bp_[k]);
        val.push_back(val_[k]);
    }
    bp.push_back(bp_.back());
    val.push_back(val_.back());
    return PLMap(std::move(bp), std::move(val));
}

std::vector<Rational> merged_breakpoints(std::span<const PLMap> maps) {
    if (maps.empty()) return {};
    std::vector<Rational> all;
    for (const auto& m : maps) {
        if (m.lo() != maps[0].lo() || m.hi() != maps[0].hi())
            throw Error(Errc::DomainMismatch, "maps do not share a domain");
        all.insert(all.end(), m.breakpoints().begin(), m.breakpoints().end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

Extremum extremize(std::span<const PLMap> maps, const Rational& coeff_t,
                   std::span<const Rational> coeffs, Sense sense) {
    if (maps.size() != coeffs.size())
        throw Error(Errc::DimensionMismatch, "coeffs length differs from number of maps");
    if (maps.empty()) throw Error(Errc::InvalidParams, "extremize needs at least one map");
    std::optional<Extremum> best;
    for (const auto& t : merged_breakpoints(maps)) {
        Rational v = coeff_t * t;
        for (size_t i = 0; i < maps.size(); ++i)
            if (coeffs[i] != 0) v += coeffs[i] * maps[i](t);
        bool better = !best || (sense == Sense::Min ? v < best->value : v > best->value);
        if (better) best = Extremum{t, v};
    }
    return *best;
}

PLMap concat(std::span<const PLMap> pieces) {
    if (pieces.empty()) throw Error(Errc::InvalidParams, "concat of nothing");
    std::vector<Rational> bp(pieces[0].breakpoints()), val(pieces[0].values());
    for (size_t p = 1; p < pieces.size(); ++p) {
        const PLMap& m = pieces[p];
        if (m.lo() != bp.back())
            throw Error(Errc::GapOrOverlap, "piece " + std::to_string(p) + " starts at " + to_string(m.lo()) +
                                                ", previous ends at " + to_string(bp.back()));
        if (m.values().front() != val.back())
            throw Error(Errc::DiscontinuousJoin, "value jump at t=" + to_string(m.lo()));
        bp.insert(bp.end(), m.breakpoints().begin() + 1, m.breakpoints().end());
        val.insert(val.end(), m.values().begin() + 1, m.values().end());
    }
    return PLMap(std::move(bp), std::move(val));
}

}  // namespace pgn
