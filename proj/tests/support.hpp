#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "pgn/blocks.hpp"
#include "pgn/rational.hpp"

namespace pgn::testing {

inline Rational random_rational(std::mt19937_64& rng, long max_den, const Rational& lo, const Rational& hi) {
    std::uniform_int_distribution<long> den(1, max_den);
    long q = den(rng);
    Integer a = ceil(lo * q), b = floor(hi * q);
    std::uniform_int_distribution<long> num(a.get_si(), b.get_si());
    return frac(num(rng), q);
}

inline std::vector<Rational> random_point(std::mt19937_64& rng, int n, long max_den) {
    std::vector<Rational> x;
    for (int i = 0; i < n; ++i) x.push_back(random_rational(rng, max_den, Rational(0), Rational(1)));
    return x;
}

inline Rational R(const char* s) { return parse_rational(s); }

// Strictly increasing positive weights summing to 1, first entry at most 1/(n+1).
inline std::vector<Rational> random_simplex_row(std::mt19937_64& rng, int n, long max_step) {
    std::uniform_int_distribution<long> step(1, max_step);
    std::vector<long> w{step(rng)};
    for (int j = 1; j <= n; ++j) w.push_back(w.back() + step(rng));
    long total = 0;
    for (long v : w) total += v;
    std::vector<Rational> a;
    for (long v : w) a.push_back(frac(v, total));
    return a;
}

// Parameters satisfying every block constraint, found by rejection.
inline BlockParams random_block_params(std::mt19937_64& rng, int n) {
    for (;;) {
        BlockParams p;
        p.n = n;
        p.gamma = random_rational(rng, 4, R("1/4"), R("4"));
        p.a_minus = random_simplex_row(rng, n, 9);
        Rational min_gap = p.a_minus[1] - p.a_minus[0];
        for (int j = 1; j < n; ++j) min_gap = std::min(min_gap, Rational(p.a_minus[j + 1] - p.a_minus[j]));
        p.t_minus = 4 * n * n * p.gamma / min_gap * random_rational(rng, 8, R("1"), R("5"));
        p.a_plus = random_simplex_row(rng, n, 9);
        p.t_plus = (p.a_minus[n] * p.t_minus - (n + 1) * p.gamma) / p.a_plus[0];
        if (validate_block_params(p).empty()) return p;
    }
}

}  // namespace pgn::testing
