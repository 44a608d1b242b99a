#include <gtest/gtest.h>

#include "pgn/blocks.hpp"
#include "pgn/errors.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace pgn;
using namespace pgn::testing;
using pgn::testing::R;

namespace {

BlockParams worked() {
    BlockParams p;
    p.n = 2;
    p.gamma = 1;
    p.t_minus = 100;
    p.t_plus = 282;
    p.a_minus = {R("1/6"), R("1/3"), R("1/2")};
    p.a_plus = p.a_minus;
    return p;
}

}  // namespace

TEST(BlockParams, WorkedExampleIsValid) { EXPECT_TRUE(validate_block_params(worked()).empty()); }

TEST(BlockParams, JunctionEqualityBroken) {
    auto p = worked();
    p.gamma = 2;
    auto v = validate_block_params(p);
    ASSERT_FALSE(v.empty());
    bool junction = false;
    for (const auto& x : v) junction |= x.constraint == "junction";
    EXPECT_TRUE(junction);
}

TEST(BlockParams, NotIncreasing) {
    auto p = worked();
    p.a_minus = {R("1/3"), R("1/3"), R("1/3")};
    EXPECT_FALSE(validate_block_params(p).empty());
}

TEST(BlockParams, ZeroGammaAndDegenerateIntervalRejected) {
    auto p = worked();
    p.gamma = 0;
    EXPECT_FALSE(validate_block_params(p).empty());
    EXPECT_THROW(build_block(p), Error);
    p = worked();
    p.t_plus = p.t_minus;
    try {
        build_block(p);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::InvalidParams);
    }
}

TEST(Block, WorkedBreakpoints) {
    Block b = build_block(worked());
    std::vector<Rational> R_expected{R("100"), R("350/3"), R("144"), R("147")};
    std::vector<Rational> S_expected{R("147"), R("235"), R("282")};
    EXPECT_EQ(b.breaks.R, R_expected);
    EXPECT_EQ(b.breaks.S, S_expected);
    EXPECT_EQ(b.system.components[0](R("144")), 47);
    EXPECT_TRUE(validate_roy(b.system).ok);
    EXPECT_TRUE(schedule_matches(b));
}

TEST(Block, WorkedExtrema) {
    auto p = worked();
    Block b = build_block(p);
    auto e = block_extrema(b, p);
    EXPECT_EQ(e.min_f, 1);
    EXPECT_EQ(e.argmin_f, 144);
    EXPECT_EQ(e.min_ratio.at(1), R("1/6"));
    EXPECT_EQ(e.f_at_tplus, (R("1/3") - R("1/6")) * 282);
    EXPECT_TRUE(e.argmax_f == p.t_minus || e.argmax_f == p.t_plus);

    Rational arg;
    EXPECT_EQ(scan_min_f(b.system, &arg), 1);
    EXPECT_EQ(arg, 144);
}

TEST(Block, ExtremizeMatchesScanOnWorkedBlock) {
    Block b = build_block(worked());
    std::vector<Rational> c{R("-1"), R("0"), R("0")};
    auto mn = extremize(b.system.components, R("1/3"), c, Sense::Min);
    EXPECT_EQ(mn.t, 144);
    EXPECT_EQ(mn.value, 1);
    auto mx = extremize(b.system.components, R("1/3"), c, Sense::Max);
    EXPECT_TRUE(mx.t == 100 || mx.t == 282);
}

TEST(BlockProperty, RandomParamsMatchOracles) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = trial % 2 ? 3 : 2;
        BlockParams p = pgn::testing::random_block_params(rng, n);
        Block b = build_block(p);
        BlockBreakpoints o = oracle_breaks(p);
        ASSERT_EQ(b.breaks.R, o.R);
        ASSERT_EQ(b.breaks.S, o.S);
        EXPECT_EQ(o.S.front(), o.R.back());
        for (int j = 0; j <= n; ++j) {
            EXPECT_EQ(b.system.components[j](p.t_minus), p.a_minus[j] * p.t_minus);
            EXPECT_EQ(b.system.components[j](p.t_plus), p.a_plus[j] * p.t_plus);
        }
        auto rep = validate_roy(b.system);
        ASSERT_TRUE(rep.ok) << rep.violations[0].message;
        EXPECT_TRUE(schedule_matches(b));

        auto e = block_extrema(b, p);
        EXPECT_EQ(e.min_f, p.gamma);
        EXPECT_EQ(e.argmin_f, o.R[n]);
        EXPECT_EQ(scan_min_f(b.system), p.gamma);
        for (int d = 1; d <= n; ++d) {
            Rational endpoint = std::min(prefix(p.a_minus, d), prefix(p.a_plus, d));
            EXPECT_EQ(e.min_ratio.at(d), endpoint);
            EXPECT_EQ(scan_min_ratio(b.system, d), endpoint);
        }
    }
}
