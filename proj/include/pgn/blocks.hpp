#pragma once

#include <map>
#include <string>
#include <vector>

#include "pgn/roy_system.hpp"

namespace pgn {

struct BlockParams {
    int n = 2;
    Rational gamma;
    Rational t_minus;
    Rational t_plus;
    std::vector<Rational> a_minus;  // n + 1 entries
    std::vector<Rational> a_plus;   // n + 1 entries
};

struct ParamViolation {
    std::string constraint;
    std::string message;
};

std::vector<ParamViolation> validate_block_params(const BlockParams& p);

struct BlockBreakpoints {
    std::vector<Rational> R;  // R_1 .. R_{n+2}
    std::vector<Rational> S;  // S_0 .. S_n
};

// Components group.r1..group.r2 move on [t_lo, t_hi].
struct ScheduleStage {
    Rational t_lo;
    Rational t_hi;
    SlopeGroup group;
};

struct Block {
    RoySystem system;
    BlockBreakpoints breaks;
    std::vector<ScheduleStage> schedule;
};

Block build_block(const BlockParams& p);

// True when every nondegenerate stage of the schedule matches the group
// detected by the validator on the corresponding pieces.
bool schedule_matches(const Block& b);

struct BlockExtrema {
    Rational min_f;       // min of t/(n+1) - P_1(t)
    Rational argmin_f;
    Rational max_f;       // max of the same functional
    Rational argmax_f;
    Rational f_at_tplus;  // (1/(n+1) - a_+^1) T_+
    std::map<int, Rational> min_ratio;  // d -> min of (P_1 + ... + P_d)(t) / t
};

BlockExtrema block_extrema(const Block& b, const BlockParams& p);

}  // namespace pgn
