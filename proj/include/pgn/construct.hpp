#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "pgn/blocks.hpp"
#include "pgn/roy_system.hpp"

namespace pgn {

struct ConstructionParams {
    int n = 2;
    Rational gamma = 1;
    std::vector<ExtendedRational> tau;  // tau_0 .. tau_{n-1}
    Rational delta = 0;
    int blocks = 6;  // K
    bool strict = false;
};

void validate_construction_params(const ConstructionParams& p);

// 5(n+1)^2(n+10)
Rational construction_constant(int n);
// exp(-(n+1)(gamma - C_n)); meaningful in strict mode only.
double epsilon_of(int n, const Rational& gamma);

struct AlphaTable {
    int n = 0;
    std::vector<Rational> theta;           // theta[d] = (1 + tau_{n-d})^-1, d = 1..n (index 0 unused)
    std::vector<std::vector<Rational>> a;  // a[i-1][j-1], i = 1..n-1, j = 1..n+1
    const Rational& at(int i, int j) const { return a[i - 1][j - 1]; }
};

AlphaTable alpha_table(int n, const std::vector<ExtendedRational>& tau);

// A box bound that had to be loosened because the stated box admits no
// solution for this (k, i).
struct BoxRelaxation {
    int k = 0;
    int i = 0;
    std::string bound;
    Rational stated;
    Rational used;
};

class BetaTables {
public:
    int n = 0;
    int K = 0;
    Rational delta;

    // 1 <= i <= n (i = n aliases row (k+1, 1)), 1 <= j <= n+1.
    const Rational& beta(int k, int i, int j) const;
    const Rational& beta_delta(int k, int i, int j) const;
    std::vector<Rational> row(int k, int i) const;
    std::vector<Rational> row_delta(int k, int i) const;
    std::vector<BoxRelaxation> relaxations;

    // storage: [k-1][i-1][j-1]; unperturbed k = 1..K+1, i = 1..n-1;
    // perturbed k = 1..K with i = 1..n-1 and k = K+1 with i = 1 only.
    std::vector<std::vector<std::vector<Rational>>> plain;
    std::vector<std::vector<std::vector<Rational>>> perturbed;
};

// One row satisfying sum, spacing, box and decay constraints for (k, i).
std::vector<Rational> beta_row(int n, int k, int i, const std::vector<Rational>& alpha_row,
                               std::vector<BoxRelaxation>* relaxations = nullptr);

BetaTables beta_tables(int n, const std::vector<ExtendedRational>& tau, const Rational& gamma,
                       const Rational& delta, int K);

struct TimeGrid {
    int n = 0;
    int K = 0;
    // T[k-1][i-1] = T_k^i for k = 1..K, i = 1..n-1, plus T[K] = {T_{K+1}}; T_k^n is T_{k+1}.
    std::vector<std::vector<Rational>> T;
    const Rational& at(int k, int i) const;
    const Rational& Tk(int k) const { return at(k, 1); }
};

TimeGrid time_grid(int n, const Rational& gamma, const BetaTables& beta, int K);

struct PlacedBlock {
    int k = 0;
    int i = 0;
    BlockParams params;
    Block block;
};

struct Construction {
    ConstructionParams params;
    AlphaTable alpha;
    BetaTables beta;
    TimeGrid grid;
    RoySystem head;  // on [0, T_1]
    std::vector<PlacedBlock> blocks;
    RoySystem system;  // on [0, T_{K+1}]
};

RoySystem head_piece(int n, const Rational& T1, const std::vector<Rational>& first_row);

Construction assemble(const ConstructionParams& p);

struct BlockMin {
    int k = 0;
    int i = 0;
    Rational min_f;
    Rational argmin_f;
};

struct Diagnostics {
    std::vector<BlockMin> per_block_min_f;
    Rational global_min_f;  // over [T_1, T_{K+1}]
    Rational global_argmin_f;
    std::vector<Rational> max_f_tail;  // index k-1, k = 1..K
    std::optional<int> tail_increasing_from;  // smallest k0 with max_f_tail increasing on [k0, K]
    std::map<std::tuple<int, int, int>, Rational> ratio_min;  // (k, i, d)
    std::map<std::pair<int, int>, Rational> ratio_min_over_i;  // (k, d)
    std::vector<Rational> ratio_target;  // index d, 1/(1 + tau_{n-d})
    bool ratio_decay_ok = true;  // |ratio_min_over_i - target| <= 2n/k everywhere
    std::optional<double> epsilon;  // strict mode only
};

Diagnostics system_diagnostics(const Construction& c);

}  // namespace pgn
