#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "distribution.hpp"
#include "errors.hpp"
#include "game.hpp"
#include "interval_union.hpp"
#include "prior.hpp"
#include "roots.hpp"

namespace disclosure {

inline constexpr double null_mass = 1e-9;
inline constexpr double endpoint_tol = 1e-9;

/// Action a_i is recommended on cells[i]. Skipped actions carry a
/// degenerate cell anchored at their cutoff gamma_i.
struct DeterministicRepresentation {
    GameSpec spec;
    std::vector<IntervalUnion> cells;

    std::size_t n() const { return cells.size(); }
    bool null(std::size_t i) const { return spec.prior.mass(cells.at(i)) <= null_mass; }
};

/// Full disclosure: B_i = A_i.
inline DeterministicRepresentation full_disclosure(const GameSpec& g) {
    DeterministicRepresentation r{g, {}};
    for (std::size_t i = 0; i < g.n(); ++i) r.cells.push_back(IntervalUnion{g.action_cell(i)});
    return r;
}

/// Throws InvalidRepresentationError unless the cells cover [0,1] and
/// overlap only on null sets.
inline void check_valid(const DeterministicRepresentation& r) {
    if (r.cells.size() != r.spec.n())
        throw InvalidRepresentationError("representation has " + std::to_string(r.cells.size()) + " cells for " +
                                         std::to_string(r.spec.n()) + " actions");
    std::vector<Interval> all;
    for (const auto& c : r.cells) all.insert(all.end(), c.pieces().begin(), c.pieces().end());
    std::sort(all.begin(), all.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    double reach = 0.0;
    for (const auto& p : all) {
        if (p.lo > reach + endpoint_tol)
            throw InvalidRepresentationError("cells leave [" + std::to_string(reach) + ", " + std::to_string(p.lo) +
                                             "] uncovered");
        reach = std::max(reach, p.hi);
    }
    if (reach < 1.0 - endpoint_tol)
        throw InvalidRepresentationError("cells leave [" + std::to_string(reach) + ", 1] uncovered");
    for (std::size_t i = 0; i < r.n(); ++i)
        for (std::size_t j = i + 1; j < r.n(); ++j)
            if (r.spec.prior.mass(r.cells[i].intersect(r.cells[j])) > null_mass)
                throw InvalidRepresentationError("cells " + std::to_string(i) + " and " + std::to_string(j) +
                                                 " overlap on a set of positive mass");
}

inline double payoff(const DeterministicRepresentation& r) {
    check_valid(r);
    double s = 0.0;
    for (std::size_t i = 0; i < r.n(); ++i) s += r.spec.values[i] * r.spec.prior.mass(r.cells[i]);
    return s;
}

/// One atom per non-null cell at its conditional mean. Means within 1e-10
/// of a cutoff are snapped onto it so the tie-break applies.
inline MeanDistribution induced_distribution(const DeterministicRepresentation& r) {
    check_valid(r);
    MeanDistribution d;
    const auto& prior = r.spec.prior;
    for (std::size_t i = 0; i < r.n(); ++i) {
        double m = prior.mass(r.cells[i]);
        if (!(m > 0.0)) continue;
        double x = prior.partial_mean(r.cells[i]);
        for (double c : r.spec.cutoffs)
            if (std::abs(x - c) <= 1e-10) x = c;
        d.atoms.push_back({x, m});
    }
    std::sort(d.atoms.begin(), d.atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
    d.payoff = payoff(r);
    return d;
}

struct CellReport {
    std::size_t index = 0;
    double mass = 0.0;
    std::optional<double> mean;  // absent for null cells
    bool obedient = true;
};

struct ObedienceReport {
    bool obedient = true;
    std::vector<CellReport> cells;
};

inline ObedienceReport is_obedient(const DeterministicRepresentation& r) {
    ObedienceReport rep;
    for (std::size_t i = 0; i < r.n(); ++i) {
        CellReport c;
        c.index = i;
        c.mass = r.spec.prior.mass(r.cells[i]);
        if (c.mass > null_mass) {
            c.mean = r.spec.prior.partial_mean(r.cells[i]);
            Interval a = r.spec.action_cell(i);
            c.obedient = *c.mean >= a.lo - endpoint_tol && *c.mean <= a.hi + endpoint_tol;
        }
        rep.obedient = rep.obedient && c.obedient;
        rep.cells.push_back(c);
    }
    return rep;
}

struct IcViolation {
    std::size_t action = 0;
    Interval uncovered;
};

struct IcReport {
    bool compatible = true;
    std::vector<IcViolation> violations;
};

/// A_i must be covered by cells with index >= i: in every state the
/// recommendation is at least as good for the sender as full disclosure.
inline IcReport is_incentive_compatible(const DeterministicRepresentation& r) {
    IcReport rep;
    for (std::size_t i = 0; i < r.n(); ++i) {
        IntervalUnion higher;
        for (std::size_t j = i; j < r.n(); ++j) higher = higher.unite(r.cells[j]);
        IntervalUnion gap = IntervalUnion{r.spec.action_cell(i)}.subtract(higher);
        for (const auto& p : gap.pieces()) {
            if (r.spec.prior.mass(p.lo, p.hi) > null_mass) {
                rep.compatible = false;
                rep.violations.push_back({i, p});
            }
        }
    }
    return rep;
}

/// Inner interval B_L and its complement B_H within an outer interval.
struct NestedPair {
    Interval outer;
    Interval inner;
    double z_low = 0.0;
    double z_high = 0.0;

    IntervalUnion low_cell() const { return IntervalUnion{inner}; }
    IntervalUnion high_cell() const { return IntervalUnion{outer}.subtract(IntervalUnion{inner}); }
};

/// Whether {z_low, z_high} is a feasible bi-pooling support on `outer`:
/// the means straddle the outer mean, and pooling the lowest states to
/// z_low leaves a remainder whose mean reaches z_high.
inline bool feasible_bipool(const Prior& prior, Interval outer, double z_low, double z_high, double tol = 1e-12) {
    if (!(prior.mass(outer.lo, outer.hi) > 0.0)) throw ZeroMassError("feasible_bipool: outer interval has zero mass");
    double m = prior.interval_mean(outer.lo, outer.hi);
    if (!(outer.lo <= z_low + tol && z_low <= m + tol && m <= z_high + tol && z_high <= outer.hi + tol)) return false;
    double y = outer.hi;
    if (z_low < m) y = bisect([&](double t) { return prior.interval_mean(outer.lo, t) - z_low; }, outer.lo, outer.hi,
                              {1e-15, 1e-15, 200});
    return prior.interval_mean(y, outer.hi) >= z_high - tol;
}

namespace detail {
// x with mass([a, x]) = target, x in [a, b].
inline double mass_point(const Prior& prior, double a, double b, double target) {
    double fa = prior.cdf(a);
    double level = fa + target;
    if (level >= prior.cdf(b)) return b;
    if (level <= fa) return a;
    return bisect([&](double x) { return prior.cdf(x) - level; }, a, b, {0.0, 1e-15, 200});
}
}  // namespace detail

/// The unique split of `outer` into an inner interval with mean z_low and
/// a two-piece remainder with mean z_high. The inner mass follows from the
/// two barycenter equations: mass(inner) = mass(outer) (z_high - m) / (z_high - z_low).
inline NestedPair nested_interval_rep(const Prior& prior, Interval outer, double z_low, double z_high) {
    if (!feasible_bipool(prior, outer, z_low, z_high, 1e-10))
        throw InfeasibleError("no nested split of [" + std::to_string(outer.lo) + ", " + std::to_string(outer.hi) +
                              "] with means " + std::to_string(z_low) + " and " + std::to_string(z_high));
    NestedPair np{outer, outer, z_low, z_high};
    double M = prior.mass(outer.lo, outer.hi);
    double m = prior.interval_mean(outer.lo, outer.hi);
    if (z_high - z_low <= 1e-14) return np;
    double mL = M * (z_high - m) / (z_high - z_low);
    if (mL >= M * (1.0 - 1e-15)) return np;
    if (mL <= M * 1e-15) {
        np.inner = {z_low, z_low};
        return np;
    }
    double fo = prior.cdf(outer.lo);
    double lmax = detail::mass_point(prior, outer.lo, outer.hi, prior.cdf(outer.hi) - fo - mL);
    auto right = [&](double l) { return detail::mass_point(prior, l, outer.hi, mL); };
    auto g = [&](double l) { return prior.interval_mean(l, right(l)) - z_low; };
    double l = outer.lo;
    if (g(outer.lo) < 0.0) l = g(lmax) <= 0.0 ? lmax : bisect(g, outer.lo, lmax, {1e-13, 1e-15, 200});
    np.inner = {l, right(l)};
    return np;
}

inline bool is_laminar(const DeterministicRepresentation& r) {
    std::vector<Interval> hulls;
    for (std::size_t i = 0; i < r.n(); ++i) {
        if (r.null(i)) continue;
        IntervalUnion b = r.cells[i].prune(endpoint_tol);
        IntervalUnion rest{b.hull()};
        for (const auto& h : hulls) rest = rest.subtract(IntervalUnion{h});
        rest = rest.prune(endpoint_tol);
        if (rest.size() != b.size()) return false;
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (std::abs(rest.pieces()[k].lo - b.pieces()[k].lo) > endpoint_tol ||
                std::abs(rest.pieces()[k].hi - b.pieces()[k].hi) > endpoint_tol)
                return false;
        }
        hulls.push_back(b.hull());
    }
    return true;
}

struct SplitViolation {
    std::string condition;  // "i" or "ii"
    std::size_t action = 0;  // skipped action (i) or high cell of the nested pair (ii)
    std::size_t cell = 0;    // offending lower cell
    double sup = 0.0;        // its supremum
    double bound = 0.0;      // the cutoff it exceeds

    std::string str() const {
        std::ostringstream os;
        if (condition == "i")
            os << "condition (i): a_" << action << " is skipped but sup B_" << cell << " = " << sup << " > gamma_"
               << action << " = " << bound;
        else
            os << "condition (ii): nested pair (B_" << cell << ", B_" << action << ") has sup B_" << cell << " = "
               << sup << " > gamma_" << action << " = " << bound;
        return os.str();
    }
};

struct SplitReport {
    bool implementable = true;
    std::vector<SplitViolation> violations;
};

/// Structural implementability test for canonical representations:
/// (i) a skipped a_i forces every lower cell below gamma_i;
/// (ii) in a nested pair the inner cell must end below gamma of the outer cell.
inline SplitReport check_split_conditions(const DeterministicRepresentation& r) {
    check_valid(r);
    if (!is_laminar(r)) throw NotCanonicalError("representation is not laminar");
    for (std::size_t i = 0; i < r.n(); ++i)
        if (!r.null(i) && r.cells[i].prune(endpoint_tol).size() > 2)
            throw NotCanonicalError("cell " + std::to_string(i) + " has more than two pieces");

    SplitReport rep;
    const double tol = endpoint_tol;
    for (std::size_t i = 1; i < r.n(); ++i) {
        if (!r.null(i)) continue;
        for (std::size_t j = 0; j < i; ++j) {
            if (r.null(j)) continue;
            double s = r.cells[j].prune(tol).sup();
            if (s > r.spec.gamma(i) + tol) rep.violations.push_back({"i", i, j, s, r.spec.gamma(i)});
        }
    }
    for (std::size_t h = 0; h < r.n(); ++h) {
        if (r.null(h)) continue;
        IntervalUnion bh = r.cells[h].prune(tol);
        if (bh.size() != 2) continue;
        double gap_lo = bh.pieces()[0].hi, gap_hi = bh.pieces()[1].lo;
        for (std::size_t l = 0; l < h; ++l) {
            if (r.null(l)) continue;
            Interval hull = r.cells[l].prune(tol).hull();
            if (hull.lo < gap_lo - tol || hull.hi > gap_hi + tol) continue;
            if (hull.hi > r.spec.gamma(h) + tol) rep.violations.push_back({"ii", h, l, hull.hi, r.spec.gamma(h)});
        }
    }
    rep.implementable = rep.violations.empty();
    return rep;
}

}  // namespace disclosure
