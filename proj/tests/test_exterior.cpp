#include <gtest/gtest.h>

#include <set>

#include "pgn/errors.hpp"
#include "pgn/exterior.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace pgn;
using namespace pgn::testing;
using pgn::testing::R;

namespace {

std::vector<Rational> Q(std::initializer_list<const char*> xs) {
    std::vector<Rational> v;
    for (auto s : xs) v.push_back(R(s));
    return v;
}

MultiVector random_mv(std::mt19937_64& rng, int dim, int grade, int span = 5) {
    std::uniform_int_distribution<int> u(-span, span);
    std::vector<Rational> c(binomial(dim, grade));
    for (auto& v : c) v = frac(u(rng), 1 + std::abs(u(rng)));
    return MultiVector(dim, grade, c);
}

}  // namespace

TEST(Wedge, BasisBlades) {
    auto e1 = MultiVector::blade(3, {0});
    auto e23 = MultiVector::blade(3, {1, 2});
    EXPECT_EQ(wedge(e1, e23), MultiVector::blade(3, {0, 1, 2}));
    auto e2 = MultiVector::blade(3, {1});
    auto e13 = MultiVector::blade(3, {0, 2});
    EXPECT_EQ(wedge(e2, e13), MultiVector::blade(3, {0, 1, 2}) * Rational(-1));
    auto x = wedge(Q({"1/3", "1/2", "1"}), e23);
    EXPECT_EQ(x.at(0), R("1/3"));
}

TEST(Wedge, GradeOverflow) {
    try {
        wedge(MultiVector::blade(2, {0}), MultiVector::blade(2, {0, 1}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::GradeOverflow);
    }
}

TEST(Wedge, BladeOrderIsLexicographic) {
    const auto& b = blades(4, 2);
    std::vector<std::vector<int>> want{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    EXPECT_EQ(b, want);
    EXPECT_EQ(binomial(5, 2), 10);
}

TEST(WedgeProperty, BilinearAlternatingAndMatchesExpansion) {
    std::mt19937_64 rng(71);
    std::uniform_int_distribution<int> dimd(2, 5);
    for (int trial = 0; trial < 1000; ++trial) {
        const int dim = dimd(rng);
        const int g = std::uniform_int_distribution<int>(1, dim - 1)(rng);
        auto v = random_mv(rng, dim, 1).coords();
        auto w = random_mv(rng, dim, 1).coords();
        auto X = random_mv(rng, dim, g - 1 < 1 ? 1 : g - 1);
        auto Y = random_mv(rng, dim, X.grade());
        Rational a = frac(trial % 7 - 3, 1 + trial % 5), b = frac(2, 3);
        std::vector<Rational> av(dim);
        for (int i = 0; i < dim; ++i) av[i] = a * v[i] + b * w[i];
        EXPECT_EQ(wedge(av, X), wedge(v, X) * a + wedge(w, X) * b);
        EXPECT_EQ(wedge(v, X * a + Y * b), wedge(v, X) * a + wedge(v, Y) * b);
        if (X.grade() + 2 <= dim) {
            EXPECT_TRUE(wedge(v, wedge(v, X)).is_zero());
            EXPECT_EQ(wedge(v, wedge(w, X)), wedge(w, wedge(v, X)) * Rational(-1));
        }
        EXPECT_EQ(wedge(v, X), wedge_oracle(v, X));
    }
}

TEST(Decomposable, Examples) {
    MultiVector x = MultiVector::blade(4, {0, 1}) + MultiVector::blade(4, {2, 3});
    EXPECT_FALSE(is_decomposable(x));
    std::mt19937_64 rng(72);
    for (int k = 0; k < 50; ++k) {
        auto a = random_mv(rng, 4, 1);
        auto b = random_mv(rng, 4, 1);
        auto ab = wedge(a.coords(), b);
        if (ab.is_zero()) continue;
        EXPECT_TRUE(is_decomposable(ab));
        EXPECT_TRUE(is_decomposable(random_mv(rng, 4, 1) + MultiVector::blade(4, {0})));
        // grade dim-1 in any dimension is decomposable
        EXPECT_TRUE(is_decomposable(random_mv(rng, 4, 3) + MultiVector::blade(4, {0, 1, 2})));
    }
    try {
        is_decomposable(MultiVector(3, 2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ZeroInput);
    }
}

TEST(Plucker, Examples) {
    auto line = plucker_subspace({{1, 0, 1}, {0, 1, 1}});
    EXPECT_EQ(line.n, 2);
    EXPECT_EQ(line.d, 1);
    EXPECT_EQ(line.plucker.coords(), Q({"1", "1", "-1"}));
    EXPECT_EQ(line.height_sq, 3);

    auto half = plucker_subspace({{1, 2}});
    EXPECT_EQ(half.plucker.coords(), Q({"1", "2"}));
    EXPECT_EQ(half.height_sq, 5);

    auto plane = plucker_subspace({{0, 1, 0}, {0, 0, 1}});
    EXPECT_EQ(plane.plucker, MultiVector::blade(3, {1, 2}));
    EXPECT_EQ(plane.height_sq, 1);

    // non-primitive and negatively oriented input gets normalized
    auto scaled = plucker_subspace({{0, 0, -2}, {0, 3, 0}});
    EXPECT_EQ(scaled.plucker, MultiVector::blade(3, {1, 2}));
}

TEST(Plucker, DependentBasis) {
    for (auto basis : std::vector<std::vector<std::vector<Integer>>>{{{1, 2, 3}, {2, 4, 6}}, {}, {{0, 0}}}) {
        try {
            plucker_subspace(basis);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::DependentBasis);
        }
    }
}

TEST(PluckerProperty, OutputsAreDecomposable) {
    std::mt19937_64 rng(73);
    std::uniform_int_distribution<int> u(-6, 6);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int dim = 3 + trial % 3;
        const int k = 1 + trial % (dim - 1);
        std::vector<std::vector<Integer>> basis(k, std::vector<Integer>(dim));
        for (auto& row : basis)
            for (auto& c : row) c = u(rng);
        try {
            auto s = plucker_subspace(basis);
            EXPECT_TRUE(is_decomposable(s.plucker));
            EXPECT_EQ(s.height_sq, s.plucker.norm_sq());
            EXPECT_TRUE(all_integer(s.plucker));
            ++checked;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::DependentBasis);
        }
    }
    EXPECT_GT(checked, 250);
}

TEST(ProjDistance, Examples) {
    auto line = plucker_subspace({{1, 0, 1}, {0, 1, 1}});
    EXPECT_EQ(proj_distance_sq(Q({"1/2", "1/2"}), line), 0);
    auto axis = subspace_from_plucker(MultiVector::blade(3, {1, 2}));
    EXPECT_EQ(proj_distance_sq(Q({"1/3", "1/2"}), axis), R("4/49"));
    try {
        proj_distance_sq(Q({"1/3"}), axis);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DimensionMismatch);
    }
}

TEST(ProjDistanceProperty, AtMostOne) {
    std::mt19937_64 rng(74);
    std::uniform_int_distribution<int> u(-5, 5);
    for (int trial = 0; trial < 300; ++trial) {
        auto x = pgn::testing::random_point(rng, 3, 20);
        for (auto& v : x) v = v * 6 - 3;
        std::vector<std::vector<Integer>> basis(2, std::vector<Integer>(4));
        for (auto& row : basis)
            for (auto& c : row) c = u(rng);
        try {
            auto L = plucker_subspace(basis);
            Rational d = proj_distance_sq(x, L);
            EXPECT_GE(d, 0);
            EXPECT_LE(d, 1);
        } catch (const Error&) {
        }
    }
}

TEST(BestApprox, ExactHit) {
    auto recs = best_approx(Q({"1/2"}), 0, R("5"));
    bool hit = false;
    for (const auto& r : recs)
        if (r.L.plucker.coords() == Q({"1", "2"})) {
            hit = true;
            EXPECT_EQ(r.dp_sq, 0);
            EXPECT_TRUE(r.running_min);
        }
    EXPECT_TRUE(hit);
}

TEST(BestApprox, GoldenRunningMinimaAtFibonacci) {
    auto recs = best_approx(Q({"832040/1346269"}), 0, R("40"));
    const std::set<long> fib{1, 2, 3, 5, 8, 13, 21, 34};
    std::set<long> seen;
    for (const auto& r : recs) {
        if (!r.running_min) continue;
        long q = r.L.plucker.at(1).get_num().get_si();
        EXPECT_TRUE(fib.count(std::labs(q))) << q;
        seen.insert(std::labs(q));
    }
    for (long q : {2L, 3L, 5L, 8L, 13L, 21L}) EXPECT_TRUE(seen.count(q)) << q;
}

TEST(BestApprox, LinesMatchBruteForce) {
    const auto x = Q({"1/3", "1/2"});
    const Rational hmax = 10;
    auto recs = best_approx(x, 1, hmax);
    ASSERT_FALSE(recs.empty());
    // every grade-2 vector in dimension 3 is decomposable; affine means a blade meets the last index
    Rational best = 2;
    const auto xp = Q({"1/3", "1/2", "1"});
    for (int a = -10; a <= 10; ++a)
        for (int b = -10; b <= 10; ++b)
            for (int c = -10; c <= 10; ++c) {
                if (a * a + b * b + c * c > 100 || (b == 0 && c == 0)) continue;
                MultiVector X(3, 2, {Rational(a), Rational(b), Rational(c)});
                Rational dp = wedge(xp, X).norm_sq() / (X.norm_sq() * R("49/36"));
                best = std::min(best, dp);
            }
    Rational got = recs.front().dp_sq;
    for (const auto& r : recs) {
        got = std::min(got, r.dp_sq);
        EXPECT_LE(r.L.height_sq, hmax * hmax);
    }
    EXPECT_EQ(got, best);
    EXPECT_EQ(best, 0);
}

TEST(BestApproxProperty, RunningMinimaNonIncreasingAndSorted) {
    std::mt19937_64 rng(75);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + trial % 3;
        auto x = pgn::testing::random_point(rng, n, 50);
        const int d = trial % n;
        auto recs = best_approx(x, d, n == 3 ? Rational(4) : Rational(9));
        std::optional<Rational> cur;
        for (size_t i = 0; i < recs.size(); ++i) {
            if (i) EXPECT_LE(recs[i - 1].L.height_sq, recs[i].L.height_sq);
            EXPECT_TRUE(is_decomposable(recs[i].L.plucker));
            if (recs[i].running_min) {
                if (cur) EXPECT_LT(recs[i].dp_sq, *cur);
                cur = recs[i].dp_sq;
            } else if (cur) {
                EXPECT_GE(recs[i].dp_sq, *cur);
            }
        }
    }
}

TEST(BestApprox, BudgetGuard) {
    try {
        best_approx(Q({"1/3", "1/5", "1/7"}), 1, R("1000"), 1e4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::BudgetExceeded);
    }
}

TEST(WedgeMatrix, Examples) {
    const auto x = Q({"1/3", "1/2"});
    auto m0 = wedge_matrix(x, 0);
    ASSERT_EQ(m0.size(), 2u);
    EXPECT_EQ(m0[0], Q({"1/3"}));
    EXPECT_EQ(m0[1], Q({"1/2"}));
    auto m1 = wedge_matrix(x, 1);
    ASSERT_EQ(m1.size(), 1u);
    EXPECT_EQ(m1[0], Q({"-1/2", "1/3"}));
}

TEST(WedgeMatrixProperty, ActsAsWedge) {
    std::mt19937_64 rng(76);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 3;
        const int d = 1 + trial % (n - 1);
        auto x = pgn::testing::random_point(rng, n, 30);
        auto Z = random_mv(rng, n, d);
        auto M = wedge_matrix(x, d);
        auto xz = wedge_oracle(x, Z);
        ASSERT_EQ(M.size(), xz.coords().size());
        for (size_t r = 0; r < M.size(); ++r) {
            Rational s = 0;
            for (size_t c = 0; c < M[r].size(); ++c) s += M[r][c] * Z.at(c);
            EXPECT_EQ(s, xz.at(r));
        }
    }
}

TEST(Dirichlet, StatedWitnessesAreValid) {
    const auto x = Q({"1/3", "1/2"});
    EXPECT_TRUE(satisfies_dirichlet(x, 1, 2, MultiVector(2, 1, Q({"2", "0"})), MultiVector(2, 2, Q({"1"}))));
    EXPECT_TRUE(satisfies_dirichlet(x, 0, 6, MultiVector(2, 0, Q({"6"})), MultiVector(2, 1, Q({"-2", "-3"}))));
    EXPECT_FALSE(satisfies_dirichlet(x, 0, 6, MultiVector(2, 0, Q({"1"})), MultiVector(2, 1, Q({"0", "-1"}))));
}

TEST(Dirichlet, FirstWitnessInSearchOrder) {
    const auto x = Q({"1/3", "1/2"});
    auto w = dirichlet_search(x, 0, 6);
    EXPECT_EQ(w.Z.coords(), Q({"2"}));
    EXPECT_EQ(w.Y.coords(), Q({"-1", "-1"}));
    EXPECT_EQ(w.error, R("1/3"));
    EXPECT_TRUE(dirichlet_holds(x, 0, 6, w));
    auto w1 = dirichlet_search(x, 1, 2);
    EXPECT_TRUE(dirichlet_holds(x, 1, 2, w1));
}

TEST(Dirichlet, ZeroPoint) {
    for (int n : {1, 2, 3})
        for (int d = 0; d < n; ++d)
            for (int N : {1, 5}) {
                auto w = dirichlet_search(std::vector<Rational>(n, Rational(0)), d, N);
                EXPECT_EQ(w.Z, MultiVector::blade(n, blades(n, d).front()));
                EXPECT_TRUE(w.Y.is_zero());
                EXPECT_EQ(w.error, 0);
            }
}

TEST(Dirichlet, BadArguments) {
    for (auto [d, N] : std::vector<std::pair<int, Rational>>{{2, Rational(3)}, {-1, Rational(3)}, {0, R("1/2")}}) {
        try {
            dirichlet_search(Q({"1/3", "1/2"}), d, N);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::InvalidParams);
        }
    }
}

TEST(DirichletProperty, AlwaysFindsAWitnessAndLiftBoundsHold) {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> Nd(2, 50);
    int lifted = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 2;
        auto x = pgn::testing::random_point(rng, n, 97);
        Rational N = Nd(rng);
        for (int d = 0; d < n; ++d) {
            auto w = dirichlet_search(x, d, N);
            EXPECT_TRUE(dirichlet_holds(x, d, N, w)) << trial << " d=" << d;
            EXPECT_TRUE(satisfies_dirichlet(x, d, N, w.Z, w.Y));
            EXPECT_TRUE(w.sandwich_ok);
            if (w.lift_applicable) {
                ++lifted;
                EXPECT_TRUE(w.lift_height_ok) << trial << " d=" << d;
                EXPECT_TRUE(w.lift_wedge_ok) << trial << " d=" << d;
            }
            EXPECT_EQ(w.X.dim(), n + 1);
            EXPECT_EQ(w.X.grade(), d + 1);
        }
    }
    EXPECT_GT(lifted, 100);
}

TEST(Intermediate, Examples) {
    auto zero = intermediate_search({0, 0}, 1, 3, R("1/100"));
    ASSERT_TRUE(zero.has_value());
    EXPECT_TRUE(wedge(Q({"0", "0", "1"}), *zero).is_zero());

    EXPECT_FALSE(intermediate_search(Q({"832040/1346269"}), 0, 3, R("1/10")).has_value());

    // (1,3) has |X|^2 = 10, so N = 3 is too small
    EXPECT_FALSE(intermediate_search(Q({"1/3"}), 0, 3, R("1/10")).has_value());
    auto third = intermediate_search(Q({"1/3"}), 0, 4, R("1/10"));
    ASSERT_TRUE(third.has_value());
    EXPECT_EQ(third->coords(), Q({"1", "3"}));
}

TEST(IntermediateProperty, ResultsSatisfyTheBound) {
    std::mt19937_64 rng(78);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + trial % 3;
        auto x = pgn::testing::random_point(rng, n, 40);
        const int d = trial % n;
        Rational N = 2 + trial % 3, eps = R("1/2");
        auto X = intermediate_search(x, d, N, eps);
        if (!X) continue;
        std::vector<Rational> xp = x;
        xp.push_back(1);
        Rational w = wedge(xp, *X).norm_sq();
        EXPECT_LE(X->norm_sq(), N * N);
        Rational lhs = 1, rhs = 1;
        for (int i = 0; i < n - d; ++i) {
            lhs *= w;
            rhs *= eps * eps;
        }
        for (int i = 0; i < d + 1; ++i) lhs *= N * N;
        EXPECT_LE(lhs, rhs);
    }
}
