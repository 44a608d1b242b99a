#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pgn/rational.hpp"

namespace pgn {

class PLMap {
public:
    // Breakpoints strictly increasing, same length as values, at least 2.
    PLMap(std::vector<Rational> breakpoints, std::vector<Rational> values);

    // Builds from (t, value) nodes that may repeat a t; repeated nodes must carry
    // the same value and are collapsed. Throws DiscontinuousJoin otherwise.
    static PLMap from_nodes(std::span<const std::pair<Rational, Rational>> nodes);

    const Rational& lo() const { return bp_.front(); }
    const Rational& hi() const { return bp_.back(); }
    const std::vector<Rational>& breakpoints() const { return bp_; }
    const std::vector<Rational>& values() const { return val_; }
    size_t pieces() const { return bp_.size() - 1; }

    struct Evaluation {
        Rational value;
        std::optional<Rational> slope_left;
        std::optional<Rational> slope_right;
    };

    Rational operator()(const Rational& t) const;
    Evaluation eval_with_slopes(const Rational& t) const;
    Rational slope(size_t piece) const;

    // Same map restricted to [a, b] within the domain.
    PLMap restricted(const Rational& a, const Rational& b) const;
    // Same map with the given extra breakpoints inserted.
    PLMap refined(std::span<const Rational> ts) const;
    // Drops interior breakpoints where the slope does not change.
    PLMap normalized() const;

    friend bool operator==(const PLMap& a, const PLMap& b) = default;

private:
    size_t piece_of(const Rational& t) const;
    std::vector<Rational> bp_;
    std::vector<Rational> val_;
};

enum class Sense { Min, Max };

struct Extremum {
    Rational t;
    Rational value;
};

// Sorted union of all breakpoints; maps must share a domain.
std::vector<Rational> merged_breakpoints(std::span<const PLMap> maps);

// Extremum over the shared domain of coeff_t * t + sum_i coeffs[i] * maps[i](t).
// Ties resolve to the smallest t.
Extremum extremize(std::span<const PLMap> maps, const Rational& coeff_t,
                   std::span<const Rational> coeffs, Sense sense);

PLMap concat(std::span<const PLMap> pieces);

}  // namespace pgn
