#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pgn/rational.hpp"

namespace pgn {

using IntVec = std::vector<std::int64_t>;

struct BodySpec {
    int n = 1;
    std::vector<Rational> x;  // n entries
    Rational Q;               // plays the role of e^t
};

// max(max_i |y_i|, Q |sum_i y_i x_i + y_{n+1}|)
Rational body_norm(const BodySpec& spec, const IntVec& y);

struct MinimaResult {
    std::vector<Rational> lambdas;  // nondecreasing
    std::vector<IntVec> witnesses;  // linearly independent, F(witness_i) = lambda_i
};

constexpr double kDefaultBudget = 1e8;

// Candidates are sign-normalized (first nonzero coordinate positive) and
// ordered by (F, l1 norm, colex from the last coordinate); witness i is the
// first candidate outside the span of the earlier witnesses.
MinimaResult successive_minima(const BodySpec& spec, double budget = kDefaultBudget);

// Rational stand-in for e^t with denominator 1000.
Rational q_from_t(double t);

struct ProfileRow {
    Rational Q;
    double t = 0;  // ln Q
    std::vector<Rational> lambda;
    std::vector<double> L;  // ln lambda_i
    std::vector<double> g;  // t/(n+1) - L_i
    std::vector<IntVec> witnesses;
};

struct Profile {
    int n = 1;
    std::vector<Rational> x;
    std::vector<ProfileRow> rows;
};

ProfileRow make_row(int n, const Rational& Q, std::vector<Rational> lambda);

// Grid must be strictly increasing with every Q > 1. threads = 0 picks the hardware count.
Profile profile(int n, const std::vector<Rational>& x, const std::vector<Rational>& q_grid,
                double budget = kDefaultBudget, unsigned threads = 0);

// Index of the first row whose product of minima leaves [Q/(n+1)!, Q].
std::optional<size_t> minkowski_check(const Profile& p);

// Every profile invariant, checked exactly on the lambdas; empty when all hold.
std::vector<std::string> profile_violations(const Profile& p);

}  // namespace pgn
