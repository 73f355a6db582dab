#include <gtest/gtest.h>

#include "disclosure/interval_union.hpp"

using disclosure::Interval;
using disclosure::IntervalUnion;

TEST(IntervalUnion, MergesTouchingAndOverlappingPieces) {
    IntervalUnion u{{0.5, 0.7}, {0.1, 0.2}, {0.2, 0.3}, {0.6, 0.9}};
    ASSERT_EQ(u.size(), 2u);
    EXPECT_EQ(u.pieces()[0], (Interval{0.1, 0.3}));
    EXPECT_EQ(u.pieces()[1], (Interval{0.5, 0.9}));
    EXPECT_DOUBLE_EQ(u.length(), 0.6);
}

TEST(IntervalUnion, KeepsDegeneratePieces) {
    IntervalUnion u{{0.4, 0.4}, {0.1, 0.2}};
    ASSERT_EQ(u.size(), 2u);
    EXPECT_EQ(u.pieces()[1], (Interval{0.4, 0.4}));
    EXPECT_NEAR(u.length(), 0.1, 1e-15);
}

TEST(IntervalUnion, RejectsPiecesOutsideUnitInterval) {
    EXPECT_THROW((IntervalUnion{{-0.1, 0.2}}), disclosure::DomainError);
    EXPECT_THROW((IntervalUnion{{0.3, 0.2}}), disclosure::DomainError);
}

TEST(IntervalUnion, IntersectAndSubtract) {
    IntervalUnion a{{0.0, 0.5}, {0.7, 1.0}};
    IntervalUnion b{{0.4, 0.8}};
    EXPECT_EQ(a.intersect(b), (IntervalUnion{{0.4, 0.5}, {0.7, 0.8}}));
    EXPECT_EQ(a.subtract(b), (IntervalUnion{{0.0, 0.4}, {0.8, 1.0}}));
    EXPECT_EQ(b.subtract(a), (IntervalUnion{{0.5, 0.7}}));
    EXPECT_TRUE(a.subtract(IntervalUnion{{0.0, 1.0}}).empty());
}

TEST(IntervalUnion, HullAndContains) {
    IntervalUnion a{{0.2, 0.3}, {0.6, 0.8}};
    EXPECT_EQ(a.hull(), (Interval{0.2, 0.8}));
    EXPECT_TRUE(a.contains(0.25));
    EXPECT_FALSE(a.contains(0.5));
    EXPECT_TRUE(a.contains(0.8));
}

TEST(IntervalUnion, PruneDropsSlivers) {
    IntervalUnion a{{0.2, 0.2 + 1e-12}, {0.5, 0.6}};
    EXPECT_EQ(a.prune(1e-9), (IntervalUnion{{0.5, 0.6}}));
}
