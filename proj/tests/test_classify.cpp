#include <gtest/gtest.h>

#include "pgn/classify.hpp"
#include "pgn/errors.hpp"
#include "support.hpp"

using namespace pgn;
using pgn::testing::R;

namespace {

std::vector<Rational> t_grid(double lo, double hi, double step) {
    std::vector<Rational> g;
    for (double t = lo; t <= hi + 1e-9; t += step) g.push_back(q_from_t(t));
    return g;
}

const Rational kGolden = R("832040/1346269");

// sum_{j <= 6} 2^{-j!}
Rational liouville_like() {
    Rational x = 0;
    long fact = 1;
    for (int j = 1; j <= 6; ++j) {
        fact *= j;
        Integer den = 1;
        den <<= fact;
        x += Rational(1) / Rational(den);
    }
    return x;
}

}  // namespace

TEST(Classify, AxisPointIsSingAndDI) {
    auto p = profile(2, {0, 0}, t_grid(1, 12, 0.25));
    auto s = bad_sing_stat(p, 0);
    EXPECT_EQ(s.verdict, Verdict::SingConsistent);
    EXPECT_EQ(s.label, kHeuristicLabel);
    for (const char* eps : {"1/2", "1/100", "99/100"}) EXPECT_TRUE(di_check(p, R(eps)).consistent);
    // s_0 = 2t/3 exactly up to float rounding
    auto s0 = s_series(p, 0);
    for (size_t k = 0; k < p.rows.size(); ++k) EXPECT_NEAR(s0[k], 2 * p.rows[k].t / 3, 1e-12);
}

TEST(Classify, GoldenApproximantIsBad) {
    auto p = profile(1, {kGolden}, t_grid(2, 12, 0.25));
    auto s = bad_sing_stat(p, 0, Window{2, 12});
    EXPECT_EQ(s.verdict, Verdict::BadConsistent);
    EXPECT_LE(s.sup_s - s.inf_s, 2.0);
    EXPECT_TRUE(di_check(p, R("99/100"), Window{2, 12}).consistent);
}

TEST(Classify, OneThirdIsSing) {
    auto p = profile(1, {R("1/3")}, t_grid(1, 12, 0.25));
    EXPECT_EQ(bad_sing_stat(p, 0).verdict, Verdict::SingConsistent);
}

TEST(Classify, TinyEpsilonIsInconsistent) {
    auto p = profile(1, {kGolden}, t_grid(2, 12, 0.25));
    auto s = bad_sing_stat(p, 0);
    // threshold -log(eps)/2 above sup f
    Rational eps = R("1/1000000000000");
    ASSERT_GT(-std::log(to_double(eps)) / 2, s.sup_f);
    EXPECT_FALSE(di_check(p, eps).consistent);
}

TEST(Classify, DiBandReportsWidth) {
    auto p = profile(1, {kGolden}, t_grid(2, 12, 0.5));
    auto c = di_check(p, R("1/2"), std::nullopt, true);
    ASSERT_TRUE(c.band.has_value());
    EXPECT_NEAR(c.band->threshold_lo - c.band->threshold_hi, 10.0 * 4 * 11 / 2, 1e-9);
}

TEST(ClassifyProperty, DiMonotoneInEpsilon) {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        auto x = pgn::testing::random_point(rng, 2, 500);
        auto p = profile(2, x, t_grid(1, 9, 0.5));
        std::vector<Rational> eps{R("1/1000"), R("1/100"), R("1/10"), R("1/3"), R("1/2"), R("9/10"), R("999/1000")};
        bool seen = false;
        for (const auto& e : eps) {
            bool c = di_check(p, e).consistent;
            if (seen) EXPECT_TRUE(c);
            seen = seen || c;
        }
    }
}

TEST(ClassifyProperty, LastStatisticIsF) {
    std::mt19937_64 rng(62);
    for (int n : {1, 2, 3}) {
        auto x = pgn::testing::random_point(rng, n, 100);
        auto p = profile(n, x, t_grid(1, n == 3 ? 6 : 9, 0.5));
        EXPECT_EQ(s_series(p, n - 1), f_series(p));
        auto s = bad_sing_stat(p, n - 1);
        auto c = di_check(p, R("1/2"));
        EXPECT_EQ(s.inf_f, c.inf_f);
        EXPECT_EQ(s.inf_s, s.inf_f);
    }
}

TEST(ClassifyProperty, VerdictsFollowTheirThresholds) {
    std::mt19937_64 rng(63);
    for (int trial = 0; trial < 12; ++trial) {
        auto x = pgn::testing::random_point(rng, 1 + trial % 2, 2000);
        auto p = profile(static_cast<int>(x.size()), x, t_grid(1, 10, 0.25));
        ClassifyConfig cfg;
        auto s = bad_sing_stat(p, 0, std::nullopt, cfg);
        ASSERT_EQ(s.quarter_inf.size(), 4u);
        bool rising = true;
        for (int q = 0; q < 3; ++q) rising = rising && s.quarter_inf[q + 1] >= s.quarter_inf[q] + cfg.sing_step;
        bool capped = s.sup_s <= s.inf_s + cfg.bad_cap_offset && s.quarter_inf[3] <= s.quarter_inf[0] + cfg.sing_step;
        if (s.verdict == Verdict::SingConsistent) EXPECT_TRUE(rising);
        if (s.verdict == Verdict::BadConsistent) EXPECT_TRUE(capped && !rising);
        if (s.verdict == Verdict::Neither) EXPECT_FALSE(rising || capped);
    }
}

TEST(Exponent, NeedsTenRows) {
    auto p = profile(1, {R("1/3")}, t_grid(1, 5, 1));
    try {
        exponent_estimate(p, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::InsufficientData);
    }
}

TEST(Exponent, AxisPointIsInfinite) {
    auto p = profile(2, {0, 0}, t_grid(1, 12, 0.5));
    auto e = exponent_estimate(p, 0);
    EXPECT_TRUE(e.omega_infinite);
    EXPECT_EQ(e.ratio_min, 0);
}

TEST(Exponent, GenericPointNearDirichlet) {
    // Large-denominator rational stand-ins for generic points.
    const std::vector<std::vector<Rational>> xs{{R("314159/1000003"), R("271828/1000033")},
                                                {R("577215/1000037"), R("141421/1000039")}};
    for (const auto& x : xs) {
        auto p = profile(2, x, t_grid(1, 12, 0.25));
        auto e = exponent_estimate(p, 0);
        EXPECT_NEAR(e.omega_lower, 0.5, 0.15);
        EXPECT_DOUBLE_EQ(e.omega_dirichlet, 0.5);
    }
}

TEST(Exponent, LiouvilleLikeIsLarge) {
    auto p = profile(1, {liouville_like()}, t_grid(1, 12, 0.25));
    auto e = exponent_estimate(p, 0);
    EXPECT_GT(e.omega_lower, 1.5);
}
