#include <gtest/gtest.h>

#include <filesystem>

#include "pgn/app.hpp"
#include "pgn/errors.hpp"
#include "pgn/io.hpp"
#include "support.hpp"

using namespace pgn;
using pgn::testing::R;

namespace {

Construction small_construction(int K = 4) {
    ConstructionParams p;
    p.n = 2;
    p.gamma = 541;
    p.tau = parse_extended_list("1/2,2");
    p.delta = R("1/200");
    p.blocks = K;
    return assemble(p);
}

std::filesystem::path fresh_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("pgnlab_io_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST(Json, RationalsAreStrings) {
    EXPECT_EQ(to_json(R("-7/3")), Json("-7/3"));
    EXPECT_EQ(rational_from_json(Json("4/6")), R("2/3"));
    EXPECT_EQ(rational_from_json(Json(5)), 5);
    auto v = std::vector<Rational>{R("1/2"), R("0"), R("-3")};
    EXPECT_EQ(rationals_from_json(to_json(v)), v);
    EXPECT_EQ(to_json(ExtendedRational::infinity()), Json("inf"));
}

TEST(Json, PLMapAndSystemRoundTrip) {
    PLMap m({0, 1, R("5/2")}, {R("1/3"), 2, 2});
    EXPECT_EQ(plmap_from_json(to_json(m)), m);
    auto c = small_construction();
    auto back = roy_from_json(Json::parse(to_json(c.system).dump()));
    EXPECT_EQ(back, c.system);
}

TEST(Json, MalformedSystemIsParseError) {
    for (const char* text : {R"({"n": 2})", R"({"n": 1, "components": [{"breakpoints": ["0"], "values": ["x"]}]})"}) {
        try {
            roy_from_json(Json::parse(text));
            FAIL() << text;
        } catch (const Error& e) {
            EXPECT_TRUE(e.code() == Errc::ParseError || e.code() == Errc::InvalidParams) << e.what();
        }
    }
}

TEST(Json, BlockParamsRoundTrip) {
    BlockParams p;
    p.n = 2;
    p.gamma = 1;
    p.t_minus = 100;
    p.t_plus = 47;
    p.a_minus = {R("1/6"), R("1/3"), R("1/2")};
    p.a_plus = {R("1/6"), R("1/3"), R("1/2")};
    auto q = block_params_from_json(to_json(p));
    EXPECT_EQ(q.n, p.n);
    EXPECT_EQ(q.gamma, p.gamma);
    EXPECT_EQ(q.t_minus, p.t_minus);
    EXPECT_EQ(q.t_plus, p.t_plus);
    EXPECT_EQ(q.a_minus, p.a_minus);
    EXPECT_EQ(q.a_plus, p.a_plus);
}

TEST(Json, DiagnosticsRoundTrip) {
    auto c = small_construction(6);
    auto d = system_diagnostics(c);
    auto e = diagnostics_from_json(Json::parse(to_json(d, c).dump()));
    EXPECT_EQ(e.global_min_f, d.global_min_f);
    EXPECT_EQ(e.global_argmin_f, d.global_argmin_f);
    EXPECT_EQ(e.max_f_tail, d.max_f_tail);
    EXPECT_EQ(e.tail_increasing_from, d.tail_increasing_from);
    EXPECT_EQ(e.ratio_min, d.ratio_min);
    EXPECT_EQ(e.ratio_min_over_i, d.ratio_min_over_i);
    EXPECT_EQ(e.ratio_target, d.ratio_target);
    EXPECT_EQ(e.ratio_decay_ok, d.ratio_decay_ok);
    ASSERT_EQ(e.per_block_min_f.size(), d.per_block_min_f.size());
    for (size_t i = 0; i < d.per_block_min_f.size(); ++i) {
        EXPECT_EQ(e.per_block_min_f[i].min_f, d.per_block_min_f[i].min_f);
        EXPECT_EQ(e.per_block_min_f[i].argmin_f, d.per_block_min_f[i].argmin_f);
    }
}

TEST(Json, MultiVectorRoundTrip) {
    MultiVector m(4, 2, {1, 0, R("-2/3"), 0, 5, 0});
    auto j = to_json(m);
    EXPECT_EQ(j["dim"], 4);
    EXPECT_EQ(multivector_from_json(j), m);
}

TEST(Csv, SamplesRebuildTheSystem) {
    auto c = small_construction();
    auto back = roy_from_samples_csv(samples_csv(c.system));
    ASSERT_EQ(back.n, c.system.n);
    for (const auto& t : c.system.partition()) EXPECT_EQ(back.values_at(t), c.system.values_at(t));
    EXPECT_EQ(back.partition().size() <= c.system.partition().size(), true);
}

TEST(Csv, SamplesHeader) {
    auto c = small_construction(1);
    auto text = samples_csv(c.system);
    EXPECT_EQ(text.substr(0, text.find('\n')), "t,P_1,P_2,P_3,t_float,P_1_float,P_2_float,P_3_float");
}

TEST(Csv, ProfileRoundTrip) {
    std::vector<Rational> grid;
    for (double t = 1; t <= 8; t += 0.5) grid.push_back(q_from_t(t));
    auto p = profile(2, {R("1/3"), R("2/7")}, grid);
    auto back = profile_from_csv(profile_csv(p));
    EXPECT_EQ(back.n, 2);
    ASSERT_EQ(back.rows.size(), p.rows.size());
    for (size_t i = 0; i < p.rows.size(); ++i) {
        EXPECT_EQ(back.rows[i].Q, p.rows[i].Q);
        EXPECT_EQ(back.rows[i].lambda, p.rows[i].lambda);
        for (size_t k = 0; k < 3; ++k) EXPECT_NEAR(back.rows[i].L[k], p.rows[i].L[k], 1e-12);
    }
    EXPECT_EQ(profile_csv(back), profile_csv(p));
}

TEST(Csv, ProfileRejectsGarbage) {
    EXPECT_THROW(profile_from_csv("Q,t\n1,2,3\n"), Error);
}

TEST(Cache, StoreAndLoad) {
    auto dir = fresh_dir("cache");
    ProfileCache cache(dir.string());
    const std::vector<Rational> x{R("1/3"), R("1/2")};
    const Rational Q = q_from_t(3);
    EXPECT_FALSE(cache.load(2, x, Q).has_value());
    auto p = profile(2, x, {Q});
    cache.store(2, x, p.rows[0]);
    auto hit = cache.load(2, x, Q);
    ASSERT_TRUE(hit.has_value());
    EXPECT_EQ(*hit, p.rows[0].lambda);
    EXPECT_FALSE(cache.load(2, x, q_from_t(4)).has_value());
    EXPECT_FALSE(cache.load(2, {R("1/3"), R("1/5")}, Q).has_value());
    std::filesystem::remove_all(dir);
}

TEST(Cache, KeysAreStableAndDistinct) {
    auto k = profile_cache_key(2, {R("1/3"), R("1/2")}, R("20"));
    EXPECT_EQ(k.size(), 16u);
    EXPECT_EQ(k, profile_cache_key(2, {R("2/6"), R("1/2")}, R("20")));
    EXPECT_NE(k, profile_cache_key(2, {R("1/3"), R("1/2")}, R("21")));
    EXPECT_NE(k, profile_cache_key(2, {R("1/2"), R("1/3")}, R("20")));
}

TEST(Config, RoundTrip) {
    RunConfig cfg;
    cfg.subcommand = "construct";
    cfg.params = {{"n", "3"}, {"tau", "1/3,1,3"}, {"gamma", "2000"}};
    cfg.out = "/tmp/x";
    cfg.budget = 12345.5;
    cfg.strict = true;
    cfg.cache_dir = "/tmp/c";
    EXPECT_EQ(parse_config(serialize_config(cfg)), cfg);
}

TEST(Config, CommentsAndErrors) {
    auto cfg = parse_config("# a comment\n\nsubcommand = profile\nx = 1/3\n  t-max = 4  \n");
    EXPECT_EQ(cfg.subcommand, "profile");
    EXPECT_EQ(cfg.params.at("x"), "1/3");
    EXPECT_EQ(cfg.params.at("t-max"), "4");
    EXPECT_THROW(parse_config("no equals sign\n"), UsageError);
    EXPECT_THROW(parse_config("strict = maybe\n"), UsageError);
}

TEST(Determinism, RepeatedOutputsAreIdentical) {
    auto a = small_construction(5), b = small_construction(5);
    EXPECT_EQ(to_json(a.system).dump(), to_json(b.system).dump());
    EXPECT_EQ(to_json(system_diagnostics(a), a).dump(), to_json(system_diagnostics(b), b).dump());
    EXPECT_EQ(samples_csv(a.system), samples_csv(b.system));
}

TEST(Files, WriteCreatesParents) {
    auto dir = fresh_dir("files");
    auto path = (dir / "a" / "b.txt").string();
    write_file(path, "hello\n");
    EXPECT_EQ(read_file(path), "hello\n");
    std::filesystem::remove_all(dir);
    EXPECT_THROW(read_file(path), std::exception);
}
