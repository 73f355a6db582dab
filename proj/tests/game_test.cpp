#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

using namespace disclosure;

TEST(Game, ValidateExamples) {
    EXPECT_TRUE(validate(testutil::thirds_game()).empty());
    GameSpec bad_values{Prior::uniform(), {0, 1.0 / 3, 2.0 / 3, 1}, {0, 1, 0.5}};
    auto v = validate(bad_values);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0], "values not increasing");
    GameSpec bad_cuts{Prior::uniform(), {0, 0.7, 0.3, 1}, {0, 1, 2}};
    v = validate(bad_cuts);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0], "cutoffs not ascending");
    GameSpec short_spec{Prior::uniform(), {0, 1}, {0}};
    EXPECT_FALSE(validate(short_spec).empty());
    GameSpec nonzero{Prior::uniform(), {0, 0.5, 1}, {1, 2}};
    EXPECT_FALSE(validate(nonzero).empty());
    EXPECT_THROW(require_valid(bad_cuts), SchemaError);
}

TEST(Game, ValueAtUsesSenderFavourableTieBreak) {
    GameSpec g = testutil::thirds_game();
    EXPECT_EQ(value_at(g, 0.5), 1.0);
    EXPECT_EQ(value_at(g, 2.0 / 3), 3.0);
    EXPECT_EQ(value_at(g, 0.0), 0.0);
    EXPECT_EQ(value_at(g, 1.0), 3.0);
    EXPECT_EQ(value_at(g, 1.0 / 3), 1.0);
    EXPECT_EQ(value_at(g, std::nextafter(1.0 / 3, 0.0)), 0.0);
    EXPECT_THROW(value_at(g, 1.2), DomainError);
}

TEST(Game, ValueAtIsMonotoneStep) {
    GameSpec g = testutil::close_cutoff_game();
    double prev = 0.0;
    for (int k = 0; k <= 1000; ++k) {
        double v = value_at(g, k / 1000.0);
        EXPECT_GE(v, prev);
        prev = v;
    }
}

TEST(Game, UnravelingPayoff) {
    EXPECT_NEAR(unraveling_payoff(testutil::thirds_game()), 4.0 / 3, 1e-15);
    EXPECT_NEAR(unraveling_payoff(testutil::close_cutoff_game()), 0.49, 1e-15);
    EXPECT_NEAR(unraveling_payoff(testutil::flat_top_game()), 0.51, 1e-15);
    GameSpec top{Prior::uniform(), {0.0, 1.0, 1.0}, {0.0, 1.0}};
    EXPECT_EQ(unraveling_payoff(top), 0.0);
}

TEST(Game, CheapTalkPayoff) {
    EXPECT_EQ(cheap_talk_payoff(testutil::thirds_game()), 1.0);
    EXPECT_EQ(cheap_talk_payoff(testutil::close_cutoff_game()), 0.0);
    EXPECT_EQ(cheap_talk_payoff(testutil::flat_top_game()), 1.0);
}

TEST(Game, UnravelingNeverBeatsCommitment) {
    std::mt19937_64 rng(2024);
    for (int k = 0; k < 40; ++k) {
        GameSpec g = testutil::random_three_action(rng, k % 2 ? testutil::random_increasing_prior(rng) : Prior::uniform());
        EXPECT_LE(unraveling_payoff(g), commitment_payoff(g) + 1e-8);
        EXPECT_EQ(cheap_talk_payoff(g), value_at(g, g.prior.mean()));
    }
}
