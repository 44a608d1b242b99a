#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pgn/plmap.hpp"

namespace pgn {

struct RoySystem {
    int n = 0;                     // components number n + 1
    std::vector<PLMap> components;  // P_1 .. P_{n+1}, shared domain

    RoySystem() = default;
    RoySystem(int n, std::vector<PLMap> components);

    const Rational& lo() const { return components.front().lo(); }
    const Rational& hi() const { return components.front().hi(); }
    std::vector<Rational> values_at(const Rational& t) const;
    std::vector<Rational> partition() const { return merged_breakpoints(components); }
    RoySystem restricted(const Rational& a, const Rational& b) const;

    friend bool operator==(const RoySystem&, const RoySystem&) = default;
};

// 1-based indices r1..r2 of the components moving on one piece.
struct SlopeGroup {
    int r1 = 0;
    int r2 = 0;
    friend bool operator==(const SlopeGroup&, const SlopeGroup&) = default;
};

enum class Axiom { Order, Sum, SlopeGroup, Kink };
const char* axiom_name(Axiom a);

struct Violation {
    Axiom axiom;
    Rational t_lo;
    Rational t_hi;  // equals t_lo for a point violation
    std::string message;
};

struct AxiomReport {
    bool ok = true;
    std::vector<Violation> violations;
};

// Moving group on each piece of the merged partition, or nullopt where the
// slope pattern is not a valid group.
std::vector<std::optional<SlopeGroup>> slope_groups(const RoySystem& s);

AxiomReport validate_roy(const RoySystem& s);

struct NonEquivalence {
    bool answer = false;
    std::optional<Rational> witness_t;
    Rational gap;
};

// 5(n+1)^2(n+10)
Rational roy_constant(int n);
// 10(n+1)^2(n+10), twice the constant above.
Rational nonequivalence_threshold(int n);

NonEquivalence nonequivalent(const RoySystem& a, const RoySystem& b);

}  // namespace pgn
