#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "game.hpp"
#include "interval_union.hpp"
#include "prior.hpp"

namespace disclosure {

struct Atom {
    double x = 0.0;
    double p = 0.0;
};

/// Distribution of posterior means: finitely many atoms plus a region on
/// which the state is revealed (G coincides with F there).
struct MeanDistribution {
    std::vector<Atom> atoms;
    IntervalUnion revealed;
    double payoff = 0.0;
};

struct Outcome {
    MeanDistribution distribution;
    double payoff = 0.0;
};

inline double total_probability(const Prior& prior, const MeanDistribution& d) {
    double s = prior.mass(d.revealed);
    for (const auto& a : d.atoms) s += a.p;
    return s;
}

inline double mean_of(const Prior& prior, const MeanDistribution& d) {
    double s = prior.moment(d.revealed);
    for (const auto& a : d.atoms) s += a.p * a.x;
    return s;
}

/// Expected sender value under d.
inline double expected_value(const GameSpec& g, const MeanDistribution& d) {
    double r = 0.0;
    for (const auto& a : d.atoms) r += a.p * value_at(g, a.x);
    for (std::size_t i = 0; i < g.n(); ++i)
        r += g.values[i] * g.prior.mass(d.revealed.intersect(IntervalUnion{g.action_cell(i)}));
    return r;
}

/// Integral of G over [0, x].
inline double integrated_cdf(const Prior& prior, const MeanDistribution& d, double x) {
    double s = 0.0;
    for (const auto& a : d.atoms)
        if (a.x < x) s += a.p * (x - a.x);
    if (!d.revealed.empty() && x > 0.0) {
        IntervalUnion below = d.revealed.intersect(IntervalUnion{{0.0, x}});
        s += x * prior.mass(below) - prior.moment(below);
    }
    return s;
}

struct MpcReport {
    bool ok = true;
    double max_violation = 0.0;  // max over tested x of I_G(x) - I_F(x)
    double worst_x = 0.0;
    double end_gap = 0.0;        // |I_G(1) - I_F(1)|
    double mass_error = 0.0;
    double mean_error = 0.0;
};

/// Mean-preserving-contraction test: I_G <= I_F on an even grid of
/// `points` points, equality at 1, unit mass, and matching means.
inline MpcReport mpc_check(const Prior& prior, const MeanDistribution& d, int points = 1001, double tol = 1e-8,
                           double mean_tol = 1e-9) {
    MpcReport r;
    r.max_violation = -1.0;
    for (int k = 0; k < points; ++k) {
        double x = static_cast<double>(k) / (points - 1);
        double gap = integrated_cdf(prior, d, x) - prior.integrated_cdf(x);
        if (gap > r.max_violation) {
            r.max_violation = gap;
            r.worst_x = x;
        }
    }
    r.end_gap = std::abs(integrated_cdf(prior, d, 1.0) - prior.integrated_cdf(1.0));
    r.mass_error = std::abs(total_probability(prior, d) - 1.0);
    r.mean_error = std::abs(mean_of(prior, d) - prior.mean());
    r.ok = r.max_violation <= tol && r.end_gap <= tol && r.mass_error <= mean_tol && r.mean_error <= mean_tol;
    return r;
}

/// Exact supremum of I_G - I_F over [0,1]. Between breakpoints the gap is
/// either linear (inside revealed regions) or concave in x with its
/// maximum where F equals the constant G, so a finite candidate set is
/// enough.
inline std::pair<double, double> mpc_max_violation(const Prior& prior, const MeanDistribution& d) {
    std::vector<double> bp{0.0, 1.0};
    for (const auto& a : d.atoms) bp.push_back(std::clamp(a.x, 0.0, 1.0));
    for (const auto& p : d.revealed.pieces()) {
        bp.push_back(p.lo);
        bp.push_back(p.hi);
    }
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

    auto G_right = [&](double x) {
        double s = prior.mass(d.revealed.intersect(IntervalUnion{{0.0, x}}));
        for (const auto& a : d.atoms)
            if (a.x <= x) s += a.p;
        return s;
    };
    double best = -1.0, at = 0.0;
    auto probe = [&](double x) {
        double gap = integrated_cdf(prior, d, x) - prior.integrated_cdf(x);
        if (gap > best) {
            best = gap;
            at = x;
        }
    };
    for (std::size_t k = 0; k < bp.size(); ++k) {
        probe(bp[k]);
        if (k + 1 == bp.size()) continue;
        double a = bp[k], b = bp[k + 1];
        double mid = 0.5 * (a + b);
        if (d.revealed.contains(mid)) continue;
        double level = G_right(a);
        if (prior.cdf(a) < level && level < prior.cdf(b)) probe(prior.quantile(level));
    }
    return {best, at};
}

}  // namespace disclosure
