#include <gtest/gtest.h>

#include "disclosure/simplex.hpp"

using namespace disclosure;

namespace {

lp::Problem make(int m, int n, const std::vector<std::tuple<int, int, double>>& entries) {
    lp::Problem p;
    std::vector<Eigen::Triplet<double>> t;
    for (auto [r, c, v] : entries) t.emplace_back(r, c, v);
    p.A.resize(m, n);
    p.A.setFromTriplets(t.begin(), t.end());
    p.A.makeCompressed();
    p.b = Eigen::VectorXd::Zero(m);
    p.c = Eigen::VectorXd::Zero(n);
    p.lo = Eigen::VectorXd::Zero(n);
    p.hi = Eigen::VectorXd::Constant(n, lp::inf);
    return p;
}

}  // namespace

TEST(Simplex, TwoVariableTextbookProblem) {
    // max x + y  s.t.  x + 2y <= 4,  3x + y <= 6
    lp::Problem p = make(2, 4, {{0, 0, 1}, {0, 1, 2}, {0, 2, 1}, {1, 0, 3}, {1, 1, 1}, {1, 3, 1}});
    p.b << 4, 6;
    p.c << 1, 1, 0, 0;
    lp::Result r = lp::Simplex(p, {2, 3}).run();
    EXPECT_NEAR(r.z[0], 1.6, 1e-12);
    EXPECT_NEAR(r.z[1], 1.2, 1e-12);
    EXPECT_NEAR(r.objective, 2.8, 1e-12);
}

TEST(Simplex, UpperBoundsFlip) {
    // max 3x + 2y  s.t.  x + y <= 4,  0 <= x <= 1,  0 <= y <= 2
    lp::Problem p = make(1, 3, {{0, 0, 1}, {0, 1, 1}, {0, 2, 1}});
    p.b << 4;
    p.c << 3, 2, 0;
    p.hi[0] = 1;
    p.hi[1] = 2;
    lp::Result r = lp::Simplex(p, {2}).run();
    EXPECT_NEAR(r.objective, 7.0, 1e-12);
    EXPECT_NEAR(r.z[2], 1.0, 1e-12);
}

TEST(Simplex, FreeVariables) {
    // max -|x - 2| written as max -t with t >= x - 2, t >= 2 - x, x free
    // rows: x - t + s1 = 2;  -x - t + s2 = -2
    lp::Problem p = make(2, 4, {{0, 0, 1}, {0, 1, -1}, {0, 2, 1}, {1, 0, -1}, {1, 1, -1}, {1, 3, 1}});
    p.b << 2, -2;
    p.c << 0, -1, 0, 0;
    p.lo[0] = -lp::inf;
    // start: x basic, t nonbasic at 0, s2 basic -> x = 2, s2 = 0
    lp::Result r = lp::Simplex(p, {0, 3}).run();
    EXPECT_NEAR(r.objective, 0.0, 1e-12);
    EXPECT_NEAR(r.z[0], 2.0, 1e-12);
}

TEST(Simplex, BealeCyclingExampleTerminates) {
    // Classic degenerate problem on which textbook Dantzig pricing cycles.
    // max 3/4 x4 - 20 x5 + 1/2 x6 - 6 x7
    lp::Problem p = make(3, 7, {{0, 3, 0.25}, {0, 4, -8}, {0, 5, -1}, {0, 6, 9}, {0, 0, 1},
                                {1, 3, 0.5},  {1, 4, -12}, {1, 5, -0.5}, {1, 6, 3}, {1, 1, 1},
                                {2, 5, 1},    {2, 2, 1}});
    p.b << 0, 0, 1;
    p.c << 0, 0, 0, 0.75, -20, 0.5, -6;
    lp::Options opt;
    opt.degenerate_before_bland = 2;
    lp::Result r = lp::Simplex(p, {0, 1, 2}, opt).run();
    EXPECT_NEAR(r.objective, 1.25, 1e-12);
}

TEST(Simplex, InfeasibleStartIsRejected) {
    lp::Problem p = make(1, 2, {{0, 0, 1}, {0, 1, 1}});
    p.b << -1;
    p.c << 1, 0;
    EXPECT_THROW(lp::Simplex(p, {1}), SolverError);
}

TEST(Simplex, UnboundedIsReported) {
    // max x  s.t.  x - y + s = 1
    lp::Problem p = make(1, 3, {{0, 0, 1}, {0, 1, -1}, {0, 2, 1}});
    p.b << 1;
    p.c << 1, 0, 0;
    EXPECT_THROW(lp::Simplex(p, {2}).run(), SolverError);
}
