#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "design.hpp"
#include "errors.hpp"
#include "game.hpp"
#include "representation.hpp"

namespace disclosure {

struct ImplementabilityReport {
    bool implementable = false;
    DeterministicRepresentation canonical;
    std::vector<SplitViolation> violations;
    IcReport ic;
    double commitment_payoff = 0.0;
};

/// Whether the commitment outcome is an equilibrium outcome of the
/// disclosure game, judged on its canonical representation.
inline ImplementabilityReport implementable(const GameSpec& g, int grid_size = 961) {
    BiPoolingSolution sol = commitment_solution(g, grid_size);
    ImplementabilityReport r;
    r.canonical = sol.canonical;
    r.commitment_payoff = sol.distribution.payoff;
    SplitReport p2 = check_split_conditions(sol.canonical);
    r.violations = p2.violations;
    r.ic = is_incentive_compatible(sol.canonical);
    r.implementable = p2.implementable;
    return r;
}

/// Per interior action i = 1..n-2: the value jump to a_{i+1}, per unit of
/// A_{i+1}, beats the jump into a_i per unit of the shorter of A_{i-1} and
/// [h(gamma_i; gamma_{i+1}), gamma_i]. All true implies implementability.
inline std::vector<bool> check_nam(const GameSpec& g) {
    require_valid(g);
    std::vector<bool> out;
    for (std::size_t i = 1; i + 1 < g.n(); ++i) {
        double gi = g.gamma(i), lo = g.gamma(i - 1), hi = g.gamma(i + 1);
        double wide = hi - gi;
        double narrow = std::min(gi - lo, gi - (gi < hi ? solve_h(g.prior, gi, hi) : gi));
        if (!(wide > 0.0) || !(narrow > 0.0)) {
            out.push_back(false);
            continue;
        }
        out.push_back((g.v(i + 1) - g.v(i)) / wide > (g.v(i) - g.v(i - 1)) / narrow);
    }
    return out;
}

/// Increasing density, convex value steps and shrinking cutoff gaps, with
/// at least one of the two gap comparisons strict at every interior i.
inline bool check_cni(const GameSpec& g) {
    require_valid(g);
    if (!g.prior.density_nondecreasing()) return false;
    constexpr double tol = 1e-12;
    for (std::size_t i = 1; i + 1 < g.n(); ++i) {
        double dv = (g.v(i + 1) - g.v(i)) - (g.v(i) - g.v(i - 1));
        double dg = (g.gamma(i) - g.gamma(i - 1)) - (g.gamma(i + 1) - g.gamma(i));
        if (dv < -tol || dg < -tol) return false;
        if (dv <= tol && dg <= tol) return false;
    }
    return true;
}

/// Three actions, increasing density and v_2 > 2 v_1.
inline bool check_c3i(const GameSpec& g) {
    require_valid(g);
    if (g.n() != 3) throw UnsupportedError("check_c3i needs exactly three actions");
    return g.prior.density_nondecreasing() && g.v(2) > 2.0 * g.v(1);
}

struct OreReport {
    bool ok = false;
    ObedienceReport obedience;
    IcReport ic;
};

/// A representation supports an obedient recommendation equilibrium iff it
/// is obedient and incentive compatible.
inline OreReport verify_ore(const DeterministicRepresentation& r) {
    OreReport rep;
    check_valid(r);
    rep.obedience = is_obedient(r);
    rep.ic = is_incentive_compatible(r);
    rep.ok = rep.obedience.obedient && rep.ic.compatible;
    return rep;
}

struct OreResult {
    DeterministicRepresentation rep;
    double payoff = 0.0;
    bool coincides_with_commitment = false;
};

/// Sender-preferred obedient recommendation equilibrium for up to three
/// actions. When the commitment outcome is not implementable the nested
/// family is searched over sup B_1 <= gamma_2, together with the simple
/// pooling structures and full disclosure.
inline OreResult preferred_ore(const GameSpec& g) {
    require_valid(g);
    if (g.n() > 3)
        throw UnsupportedError("preferred_ore supports at most three actions; check candidates with verify_ore");
    ImplementabilityReport imp = implementable(g);
    if (imp.implementable) return {imp.canonical, imp.commitment_payoff, true};

    std::vector<detail::Candidate> cands;
    auto add = [&](const DeterministicRepresentation& r) {
        if (verify_ore(r).ok) cands.push_back({r, payoff(r)});
    };
    add(full_disclosure(g));
    for (std::size_t i = 1; i < g.n(); ++i)
        if (auto r = detail::pool_top(g, i)) add(*r);
    if (g.n() == 3) {
        three::Family fam(g);
        double lo = std::max(fam.b_min(), g.gamma(1));
        three::Member m = fam.best(lo, g.gamma(2));
        if (m.ok) add(fam.rep(m));
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < cands.size(); ++k)
        if (cands[k].value > cands[best].value + 1e-12) best = k;
    return {cands[best].rep, cands[best].value, false};
}

struct PayoffBounds {
    double unraveling = 0.0;
    double preferred = 0.0;
};

inline PayoffBounds payoff_bounds(const GameSpec& g) { return {unraveling_payoff(g), preferred_ore(g).payoff}; }

struct SweepPoint {
    double z = 0.0;
    DeterministicRepresentation rep;
    double payoff = 0.0;
};

/// Move the states below z to their full-disclosure cells:
/// B_i(z) = (B_i \ [0,z]) U (A_i n [0,z]). At z = 0 this is the given
/// representation, at z = gamma_{n-1} it is full disclosure.
inline DeterministicRepresentation sweep_rep(const DeterministicRepresentation& top, double z) {
    DeterministicRepresentation r{top.spec, {}};
    IntervalUnion low{{0.0, z}};
    for (std::size_t i = 0; i < top.n(); ++i) {
        IntervalUnion cell = top.cells[i].subtract(low);
        if (z > 0.0) cell = cell.unite(IntervalUnion{top.spec.action_cell(i)}.intersect(low).prune(1e-15));
        r.cells.push_back(cell);
    }
    return tidy(r);
}

inline double sweep_end(const GameSpec& g) { return g.gamma(g.n() - 1); }

/// Payoff along the sweep on a grid of roughly `step` per action cell.
inline std::vector<SweepPoint> payoff_sweep(const DeterministicRepresentation& top, double step = 1e-3) {
    const GameSpec& g = top.spec;
    std::vector<double> zs{0.0};
    for (std::size_t i = 0; i + 1 < g.n(); ++i) {
        double a = g.gamma(i), b = g.gamma(i + 1);
        int k = std::max(1, static_cast<int>(std::ceil((b - a) / step)));
        for (int j = 1; j <= k; ++j) zs.push_back(j == k ? b : a + (b - a) * j / k);
    }
    std::vector<SweepPoint> out;
    for (double z : zs) {
        DeterministicRepresentation r = sweep_rep(top, z);
        double p = payoff(r);
        out.push_back({z, std::move(r), p});
    }
    return out;
}

/// An obedient, incentive-compatible representation with the requested
/// payoff, found by bisection on the sweep parameter z.
inline SweepPoint ore_at_payoff(const DeterministicRepresentation& top, double target, double tol = 1e-9) {
    const GameSpec& g = top.spec;
    if (!verify_ore(top).ok) throw InvalidRepresentationError("starting representation is not an equilibrium");
    double hi_pay = payoff(top);
    double lo_pay = unraveling_payoff(g);
    if (target < lo_pay - 1e-9 || target > hi_pay + 1e-9)
        throw TargetOutOfRangeError("target " + std::to_string(target) + " outside [" + std::to_string(lo_pay) + ", " +
                                    std::to_string(hi_pay) + "]");
    std::vector<SweepPoint> pts = payoff_sweep(top);
    for (const auto& p : pts)
        if (std::abs(p.payoff - target) <= tol) return p;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        double a = pts[k].payoff - target, b = pts[k + 1].payoff - target;
        if ((a > 0) == (b > 0)) continue;
        double z = bisect([&](double t) { return payoff(sweep_rep(top, t)) - target; }, pts[k].z, pts[k + 1].z,
                          {tol, 1e-15, 200});
        DeterministicRepresentation r = sweep_rep(top, z);
        double p = payoff(r);
        return {z, std::move(r), p};
    }
    // Target within tolerance of an endpoint but not hit exactly.
    const SweepPoint& near = std::abs(pts.front().payoff - target) < std::abs(pts.back().payoff - target)
                                 ? pts.front()
                                 : pts.back();
    return near;
}

inline SweepPoint ore_at_payoff(const GameSpec& g, double target, double tol = 1e-9) {
    return ore_at_payoff(preferred_ore(g).rep, target, tol);
}

}  // namespace disclosure
