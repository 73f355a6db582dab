#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

using namespace disclosure;

namespace {

const double kEx2Y = (1.8 - std::sqrt(2.6)) / 2;
const double kEx3Y = (1.4 - std::sqrt(0.52)) / 2;
const double kEx2Payoff = 1.0 * (0.9 - 0.1) + 1.1 * (0.1 - kEx2Y + 0.1);
const double kEx3Payoff = 1.0 * (0.7 - 0.5) + 1.3 * (0.5 - kEx3Y + 0.3);

// Best payoff over B_0 = [0,y], B_1 = [h,b], B_2 = [y,h] U [b,1] on a grid,
// uniform prior, with obedience and the no-profitable-revelation test
// evaluated by hand.
double brute_force_uniform_ore(const GameSpec& g, int steps) {
    const double g1 = g.gamma(1), g2 = g.gamma(2), v1 = g.v(1), v2 = g.v(2);
    double best = -1.0;
    for (int iy = 0; iy <= steps; ++iy) {
        double y = static_cast<double>(iy) / steps;
        if (y > g1) break;
        if (y > 0 && y / 2 >= g1) continue;
        for (int ih = iy; ih <= steps; ++ih) {
            double h = static_cast<double>(ih) / steps;
            for (int ib = ih; ib <= steps; ++ib) {
                double b = static_cast<double>(ib) / steps;
                if (b > g2) break;
                double m1 = b - h, m2 = (h - y) + (1 - b);
                if (m1 > 0) {
                    double e1 = (h + b) / 2;
                    if (e1 < g1 || e1 >= g2) continue;
                }
                if (m2 > 0) {
                    double e2 = ((h * h - y * y) + (1 - b * b)) / (2 * m2);
                    if (e2 < g2) continue;
                }
                best = std::max(best, v1 * m1 + v2 * m2);
            }
        }
    }
    return best;
}

}  // namespace

TEST(Implementable, Examples) {
    ImplementabilityReport one = implementable(testutil::thirds_game());
    EXPECT_TRUE(one.implementable);
    EXPECT_TRUE(one.violations.empty());
    EXPECT_TRUE(one.ic.compatible);
    EXPECT_NEAR(one.commitment_payoff, 100.0 / 48, 1e-8);

    ImplementabilityReport two = implementable(testutil::flat_top_game());
    EXPECT_FALSE(two.implementable);
    ASSERT_EQ(two.violations.size(), 1u);
    EXPECT_EQ(two.violations[0].condition, "i");
    EXPECT_EQ(two.violations[0].action, 2u);
    EXPECT_NEAR(two.violations[0].sup, 1.0, 1e-12);
    EXPECT_FALSE(two.ic.compatible);

    ImplementabilityReport three = implementable(testutil::close_cutoff_game());
    EXPECT_FALSE(three.implementable);
    ASSERT_EQ(three.violations.size(), 1u);
    EXPECT_EQ(three.violations[0].condition, "ii");
    EXPECT_NEAR(three.violations[0].sup, 0.845, 5e-3);
    EXPECT_FALSE(three.ic.compatible);
}

TEST(Implementable, TwoActionsAlwaysImplementable) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int k = 0; k < 20; ++k) {
        GameSpec g{Prior::uniform(), {0.0, u(rng), 1.0}, {0.0, 1.0}};
        EXPECT_TRUE(implementable(g).implementable);
    }
}

TEST(SufficientConditions, Nam) {
    EXPECT_EQ(check_nam(testutil::thirds_game()), std::vector<bool>{true});
    EXPECT_EQ(check_nam(testutil::flat_top_game()), std::vector<bool>{false});
    EXPECT_EQ(check_nam(testutil::close_cutoff_game()), std::vector<bool>{false});
    GameSpec two{Prior::uniform(), {0.0, 0.5, 1.0}, {0.0, 1.0}};
    EXPECT_TRUE(check_nam(two).empty());
}

TEST(SufficientConditions, Cni) {
    EXPECT_TRUE(check_cni({Prior::uniform(), {0.0, 0.4, 0.7, 1.0}, {0.0, 1.0, 2.5}}));
    EXPECT_TRUE(check_cni(testutil::thirds_game()));
    Prior decreasing = Prior::piecewise_linear({0.0, 1.0}, {1.5, 0.5});
    EXPECT_FALSE(check_cni({decreasing, {0.0, 0.4, 0.7, 1.0}, {0.0, 1.0, 2.5}}));
    // Widening gaps break the chain.
    EXPECT_FALSE(check_cni({Prior::uniform(), {0.0, 0.2, 0.6, 1.0}, {0.0, 1.0, 2.5}}));
    // Equal gaps and linear values: nothing strict.
    EXPECT_FALSE(check_cni({Prior::uniform(), {0.0, 0.25, 0.5, 1.0}, {0.0, 1.0, 2.0}}));
}

TEST(SufficientConditions, C3i) {
    EXPECT_TRUE(check_c3i(testutil::thirds_game()));
    EXPECT_FALSE(check_c3i(testutil::flat_top_game()));
    EXPECT_FALSE(check_c3i(testutil::close_cutoff_game()));
    GameSpec four{Prior::uniform(), {0.0, 0.3, 0.5, 0.8, 1.0}, {0.0, 1.0, 2.0, 4.0}};
    EXPECT_THROW(check_c3i(four), UnsupportedError);
}

TEST(SufficientConditions, SoundOnRandomSpecs) {
    std::mt19937_64 rng(77);
    int nam_true = 0, c3i_true = 0;
    for (int k = 0; k < 60; ++k) {
        Prior p = k % 2 ? testutil::random_increasing_prior(rng) : Prior::uniform();
        GameSpec g = testutil::random_three_action(rng, p);
        bool nam = check_nam(g)[0];
        bool c3i = check_c3i(g);
        nam_true += nam;
        c3i_true += c3i;
        if (nam || c3i) EXPECT_TRUE(implementable(g).implementable) << k << " nam=" << nam << " c3i=" << c3i;
    }
    EXPECT_GT(nam_true, 0);
    EXPECT_GT(c3i_true, 0);
}

TEST(VerifyOre, Examples) {
    EXPECT_TRUE(verify_ore(preferred_ore(testutil::close_cutoff_game()).rep).ok);
    EXPECT_FALSE(verify_ore(implementable(testutil::close_cutoff_game()).canonical).ok);
    for (const GameSpec& g : {testutil::thirds_game(), testutil::flat_top_game(), testutil::close_cutoff_game()})
        EXPECT_TRUE(verify_ore(full_disclosure(g)).ok);
}

TEST(PreferredOre, ThirdsGameCoincidesWithCommitment) {
    OreResult r = preferred_ore(testutil::thirds_game());
    EXPECT_TRUE(r.coincides_with_commitment);
    EXPECT_NEAR(r.payoff, 100.0 / 48, 1e-8);
}

TEST(PreferredOre, FlatTopGameClosedForm) {
    OreResult r = preferred_ore(testutil::flat_top_game());
    EXPECT_FALSE(r.coincides_with_commitment);
    EXPECT_NEAR(r.rep.cells[0].sup(), kEx2Y, 1e-8);
    EXPECT_NEAR(r.rep.cells[1].inf(), 0.1, 1e-8);
    EXPECT_NEAR(r.rep.cells[1].sup(), 0.9, 1e-12);
    EXPECT_NEAR(r.payoff, kEx2Payoff, 1e-7);
}

TEST(PreferredOre, CloseCutoffGameClosedForm) {
    OreResult r = preferred_ore(testutil::close_cutoff_game());
    EXPECT_FALSE(r.coincides_with_commitment);
    EXPECT_NEAR(r.rep.cells[0].sup(), kEx3Y, 1e-8);
    EXPECT_NEAR(r.rep.cells[1].inf(), 0.5, 1e-8);
    EXPECT_NEAR(r.rep.cells[1].sup(), 0.7, 1e-12);
    EXPECT_NEAR(r.payoff, kEx3Payoff, 1e-7);
    EXPECT_NEAR(kEx3Payoff, 0.7987216658103189, 1e-15);
}

TEST(PreferredOre, MatchesBruteForceOnUniformGrid) {
    std::vector<GameSpec> specs{testutil::flat_top_game(), testutil::close_cutoff_game()};
    std::mt19937_64 rng(8);
    for (int k = 0; k < 4; ++k) specs.push_back(testutil::random_three_action(rng, Prior::uniform()));
    for (const auto& g : specs) {
        double exact = preferred_ore(g).payoff;
        double grid = brute_force_uniform_ore(g, 200);
        EXPECT_GE(exact, grid - 1e-9);
        EXPECT_LE(exact, grid + 0.03);
    }
}

TEST(PreferredOre, Invariants) {
    std::mt19937_64 rng(19);
    int non_impl = 0;
    for (int k = 0; k < 120; ++k) {
        Prior p = k % 2 ? testutil::random_increasing_prior(rng) : Prior::uniform();
        GameSpec g = testutil::random_three_action(rng, p);
        ImplementabilityReport imp = implementable(g);
        OreResult r = preferred_ore(g);
        EXPECT_TRUE(verify_ore(r.rep).ok) << k;
        EXPECT_NEAR(payoff(r.rep), r.payoff, 1e-12);
        EXPECT_GT(r.payoff, unraveling_payoff(g)) << k;
        EXPECT_LE(r.payoff, imp.commitment_payoff + 1e-8) << k;
        EXPECT_EQ(r.coincides_with_commitment, imp.implementable);
        if (!imp.implementable) {
            ++non_impl;
            EXPECT_LT(r.payoff, imp.commitment_payoff - 1e-8) << k;
            if (!r.rep.null(1)) EXPECT_NEAR(r.rep.cells[1].sup(), g.gamma(2), 1e-12) << k;
        }
    }
    EXPECT_GE(non_impl, 5);
}

TEST(PreferredOre, RejectsFourActions) {
    GameSpec four{Prior::uniform(), {0.0, 0.3, 0.5, 0.8, 1.0}, {0.0, 1.0, 2.0, 4.0}};
    EXPECT_THROW(preferred_ore(four), UnsupportedError);
}

TEST(PayoffBounds, Examples) {
    PayoffBounds a = payoff_bounds(testutil::close_cutoff_game());
    EXPECT_NEAR(a.unraveling, 0.49, 1e-15);
    EXPECT_NEAR(a.preferred, kEx3Payoff, 1e-7);
    PayoffBounds b = payoff_bounds(testutil::thirds_game());
    EXPECT_NEAR(b.unraveling, 4.0 / 3, 1e-15);
    EXPECT_NEAR(b.preferred, 100.0 / 48, 1e-8);
    PayoffBounds c = payoff_bounds(testutil::flat_top_game());
    EXPECT_NEAR(c.unraveling, 0.51, 1e-15);
    EXPECT_NEAR(c.preferred, kEx2Payoff, 1e-7);
}

TEST(PayoffSweep, EveryStepIsAnEquilibrium) {
    for (const GameSpec& g : {testutil::thirds_game(), testutil::flat_top_game(), testutil::close_cutoff_game()}) {
        auto pts = payoff_sweep(preferred_ore(g).rep, 1e-2);
        EXPECT_EQ(pts.front().z, 0.0);
        EXPECT_EQ(pts.back().z, sweep_end(g));
        EXPECT_NEAR(pts.back().payoff, unraveling_payoff(g), 1e-12);
        for (const auto& p : pts) {
            EXPECT_TRUE(verify_ore(p.rep).ok) << p.z;
            EXPECT_TRUE(is_laminar(p.rep)) << p.z;
        }
    }
}

TEST(OreAtPayoff, CloseCutoffGame) {
    GameSpec g = testutil::close_cutoff_game();
    SweepPoint lo = ore_at_payoff(g, 0.49);
    EXPECT_NEAR(lo.payoff, 0.49, 1e-7);
    EXPECT_TRUE(verify_ore(lo.rep).ok);

    SweepPoint top = ore_at_payoff(g, kEx3Payoff);
    EXPECT_EQ(top.z, 0.0);
    EXPECT_EQ(top.rep.cells, preferred_ore(g).rep.cells);

    SweepPoint mid = ore_at_payoff(g, 0.6);
    EXPECT_NEAR(mid.payoff, 0.6, 1e-7);
    EXPECT_TRUE(verify_ore(mid.rep).ok);
    EXPECT_TRUE(is_laminar(mid.rep));

    EXPECT_THROW(ore_at_payoff(g, 0.48), TargetOutOfRangeError);
    EXPECT_THROW(ore_at_payoff(g, 0.81), TargetOutOfRangeError);
}

TEST(OreAtPayoff, RejectsNonEquilibriumStart) {
    EXPECT_THROW(ore_at_payoff(implementable(testutil::close_cutoff_game()).canonical, 0.6), InvalidRepresentationError);
}
