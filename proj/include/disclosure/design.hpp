#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "distribution.hpp"
#include "errors.hpp"
#include "game.hpp"
#include "prior.hpp"
#include "representation.hpp"
#include "roots.hpp"
#include "simplex.hpp"

namespace disclosure {

struct Segment {
    enum class Type { revealed, pooling, bipooling };
    Interval outer;
    Type type = Type::pooling;
    std::vector<double> means;
};

inline const char* to_string(Segment::Type t) {
    switch (t) {
        case Segment::Type::revealed: return "revealed";
        case Segment::Type::pooling: return "pooling";
        case Segment::Type::bipooling: return "bipooling";
    }
    return "?";
}

struct BiPoolingSolution {
    MeanDistribution distribution;
    std::vector<Segment> segments;
    DeterministicRepresentation canonical;
    double gamma_tilde = 0.0;  // top of the lowest region (revealed or pooled below gamma_1)
};

// ---------------------------------------------------------------------------
// Helpers shared by the solvers

/// Replace null cells by a degenerate anchor at gamma_i and drop slivers.
inline DeterministicRepresentation tidy(DeterministicRepresentation r) {
    for (std::size_t i = 0; i < r.n(); ++i) {
        IntervalUnion c = r.cells[i].prune(1e-12);
        if (c.empty() || r.spec.prior.mass(c) <= 1e-14) c = IntervalUnion::point(r.spec.gamma(i));
        r.cells[i] = c;
    }
    return r;
}

/// Segment list and mean distribution of a canonical representation. A
/// lowest cell lying inside A_0 is reported as revealed; every other cell
/// pools to its mean.
inline BiPoolingSolution solution_from_rep(const DeterministicRepresentation& rep) {
    BiPoolingSolution sol;
    sol.canonical = rep;
    const Prior& prior = rep.spec.prior;
    std::vector<bool> used(rep.n(), false);
    const bool reveal_low = !rep.null(0) && rep.cells[0].sup() <= rep.spec.gamma(1) + endpoint_tol;
    for (std::size_t h = 0; h < rep.n(); ++h) {
        if (rep.null(h)) continue;
        IntervalUnion bh = rep.cells[h].prune(endpoint_tol);
        if (bh.size() != 2) continue;
        Segment s{bh.hull(), Segment::Type::bipooling, {}};
        for (std::size_t l = 0; l < h; ++l) {
            if (rep.null(l) || used[l]) continue;
            Interval hl = rep.cells[l].prune(endpoint_tol).hull();
            if (hl.lo >= s.outer.lo - endpoint_tol && hl.hi <= s.outer.hi + endpoint_tol) {
                s.means.push_back(prior.partial_mean(rep.cells[l]));
                used[l] = true;
            }
        }
        s.means.push_back(prior.partial_mean(rep.cells[h]));
        used[h] = true;
        sol.segments.push_back(s);
    }
    for (std::size_t i = 0; i < rep.n(); ++i) {
        if (rep.null(i) || used[i]) continue;
        for (const auto& p : rep.cells[i].prune(endpoint_tol).pieces()) {
            if (i == 0 && reveal_low) sol.segments.push_back({p, Segment::Type::revealed, {}});
            else sol.segments.push_back({p, Segment::Type::pooling, {prior.interval_mean(p.lo, p.hi)}});
        }
    }
    std::sort(sol.segments.begin(), sol.segments.end(),
              [](const Segment& a, const Segment& b) { return a.outer.lo < b.outer.lo; });

    MeanDistribution& d = sol.distribution;
    for (std::size_t i = 0; i < rep.n(); ++i) {
        if (rep.null(i)) continue;
        if (i == 0 && reveal_low) {
            d.revealed = rep.cells[0].prune(endpoint_tol);
            sol.gamma_tilde = d.revealed.sup();
            continue;
        }
        double x = prior.partial_mean(rep.cells[i]);
        for (double c : rep.spec.cutoffs)
            if (std::abs(x - c) <= 1e-10) x = c;
        d.atoms.push_back({x, prior.mass(rep.cells[i])});
    }
    std::sort(d.atoms.begin(), d.atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
    d.payoff = payoff(rep);
    return sol;
}

// ---------------------------------------------------------------------------
// Grid linear program

/// Output of the grid LP. `atoms` are the raw optimal grid masses; the
/// distribution merges atoms inside each action cell (which leaves the
/// payoff unchanged) and, if the result violates the exact MPC test between
/// grid points, mixes in the smallest weight of the point mass at the prior
/// mean that restores it.
/// Split [0,1] at the points where the integrated CDF of `d` touches that of
/// the prior and read each piece as a cell (defined below).
inline DeterministicRepresentation canonicalize(const MeanDistribution& d, const GameSpec& g, double tight_tol = 1e-7,
                                                double merge_dist = 0.0);

struct LpSolution {
    std::vector<double> grid;
    std::vector<Atom> atoms;
    double objective = 0.0;
    MeanDistribution distribution;
    double repair_weight = 0.0;
    int iterations = 0;
    int bland_iterations = 0;
};

/// Uniform grid of `size` points with every cutoff placed exactly. A cutoff
/// within a quarter step of a grid point replaces it, so no step is shorter
/// than a quarter of the uniform one (short steps make the LP badly scaled).
inline std::vector<double> lp_grid(const GameSpec& g, int size) {
    if (size < 51) throw DomainError("LP grid needs at least 51 points");
    const double h = 1.0 / (size - 1);
    std::vector<double> x(size);
    for (int k = 0; k < size; ++k) x[k] = static_cast<double>(k) * h;
    std::vector<double> pinned{0.0, 1.0};
    auto movable = [&](double v) { return std::find(pinned.begin(), pinned.end(), v) == pinned.end(); };
    for (double c : g.cutoffs) {
        auto it = std::lower_bound(x.begin(), x.end(), c);
        if (it != x.end() && *it == c) {
        } else if (it != x.end() && *it - c <= 0.25 * h && movable(*it)) {
            *it = c;
        } else if (it != x.begin() && c - *(it - 1) <= 0.25 * h && movable(*(it - 1))) {
            *(it - 1) = c;
        } else {
            x.insert(it, c);
        }
        pinned.push_back(c);
    }
    x.erase(std::unique(x.begin(), x.end()), x.end());
    return x;
}

namespace detail {

inline std::vector<Atom> merge_by_action(const GameSpec& g, const std::vector<Atom>& atoms) {
    std::map<std::size_t, std::array<double, 4>> acc;  // mass, moment, min, max
    for (const auto& a : atoms) {
        if (!(a.p > 0.0)) continue;
        auto [it, fresh] = acc.try_emplace(action_at(g, a.x), std::array<double, 4>{0.0, 0.0, a.x, a.x});
        auto& v = it->second;
        v[0] += a.p;
        v[1] += a.p * a.x;
        v[2] = std::min(v[2], a.x);
        v[3] = std::max(v[3], a.x);
    }
    std::vector<Atom> out;
    for (const auto& [i, v] : acc) out.push_back({std::clamp(v[1] / v[0], v[2], v[3]), v[0]});
    return out;
}


/// A pooled cell whose mean lands just below its cutoff (grid error) earns
/// the lower action. Hand the lowest states of such a cell to the cell on
/// their left until the mean reaches the cutoff. Top cells go first, since
/// their lowest states raise the mean of the cell they join.
inline DeterministicRepresentation fit_cell_means(DeterministicRepresentation r, double reach) {
    const Prior& prior = r.spec.prior;
    for (std::size_t i = r.n(); i-- > 1;) {
        if (r.null(i)) continue;
        double target = r.spec.cutoffs[i];
        double m = prior.partial_mean(r.cells[i]);
        if (m >= target || m < target - reach) continue;
        Interval first = r.cells[i].pieces().front();
        if (first.lo <= 0.0) continue;
        std::size_t j = r.n();
        for (std::size_t k = 0; k < r.n(); ++k)
            if (k != i && r.cells[k].contains(first.lo) && r.cells[k].inf() < first.lo) j = k;
        if (j == r.n()) continue;
        auto moved = [&](double eps) {
            return r.cells[i].subtract(IntervalUnion{{first.lo, first.lo + eps}}).prune(1e-15);
        };
        double lo = 0.0, hi = 0.5 * first.length();
        if (prior.partial_mean(moved(hi)) < target) continue;
        for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
            double mid = 0.5 * (lo + hi);
            (prior.partial_mean(moved(mid)) >= target ? hi : lo) = mid;
        }
        r.cells[j] = r.cells[j].unite(IntervalUnion{{first.lo, first.lo + hi}});
        r.cells[i] = moved(hi);
    }
    return r;
}

}  // namespace detail

inline LpSolution solve_lp_detail(const GameSpec& g, int grid_size = 481) {
    require_valid(g);
    LpSolution sol;
    sol.grid = lp_grid(g, grid_size);
    const auto& x = sol.grid;
    const int N = static_cast<int>(x.size());
    const double mu = g.prior.mean();
    const double H_end = g.prior.integrated_cdf(1.0);

    // Variables: g_0..g_{N-1} then H_1..H_{N-2}, where H_m is the integrated
    // CDF of the candidate distribution at x_m. Row k states that g_k is the
    // jump in the slope of H at x_k.
    const int nv = N + (N - 2);
    auto hvar = [N](int m) { return N + m - 1; };
    std::vector<double> step(N - 1);
    for (int k = 0; k + 1 < N; ++k) step[k] = x[k + 1] - x[k];

    std::vector<Eigen::Triplet<double>> t;
    for (int k = 0; k < N; ++k) t.emplace_back(k, k, 1.0);
    for (int m = 1; m <= N - 2; ++m) {
        t.emplace_back(m, hvar(m), 1.0 / step[m - 1] + 1.0 / step[m]);
        t.emplace_back(m - 1, hvar(m), -1.0 / step[m - 1]);
        t.emplace_back(m + 1, hvar(m), -1.0 / step[m]);
    }
    lp::Problem p;
    p.A.resize(N, nv);
    p.A.setFromTriplets(t.begin(), t.end());
    p.A.makeCompressed();
    p.b = Eigen::VectorXd::Zero(N);
    p.b[N - 2] += H_end / step[N - 2];
    p.b[N - 1] += 1.0 - H_end / step[N - 2];
    p.c = Eigen::VectorXd::Zero(nv);
    p.lo = Eigen::VectorXd::Zero(nv);
    p.hi = Eigen::VectorXd::Constant(nv, lp::inf);
    for (int k = 0; k < N; ++k) p.c[k] = value_at(g, x[k]);
    for (int m = 1; m <= N - 2; ++m) {
        p.lo[hvar(m)] = -lp::inf;
        p.hi[hvar(m)] = g.prior.integrated_cdf(x[m]);
    }

    // Start from the two grid points around the prior mean.
    int b = static_cast<int>(std::upper_bound(x.begin(), x.end(), mu) - x.begin());
    b = std::clamp(b, 1, N - 1);
    std::vector<int> basis{b - 1, b};
    for (int m = 1; m <= N - 2; ++m) basis.push_back(hvar(m));

    lp::Simplex simplex(p, basis);
    lp::Result r = simplex.run();
    sol.iterations = r.iterations;
    sol.bland_iterations = r.bland_iterations;
    for (int k = 0; k < N; ++k) {
        double mass = r.z[k];
        if (mass > 1e-12) sol.atoms.push_back({x[k], mass});
        if (mass > 0.0) sol.objective += mass * p.c[k];
    }

    MeanDistribution d;
    d.atoms = detail::merge_by_action(g, sol.atoms);
    auto [viol, at] = mpc_max_violation(g.prior, d);
    (void)at;
    // Violations this small are rounding in the LP solution, not grid error.
    // At x = 1 the gap is just the mean error, which mixing cannot remove.
    const double repair_slack = 1e-11 + std::abs(mu - mean_of(g.prior, d));
    if (viol > repair_slack) {
        auto mixed = [&](double lam) {
            MeanDistribution m = d;
            for (auto& a : m.atoms) a.p *= (1.0 - lam);
            m.atoms.push_back({mu, lam});
            std::sort(m.atoms.begin(), m.atoms.end(), [](const Atom& u, const Atom& v) { return u.x < v.x; });
            return m;
        };
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            if (mpc_max_violation(g.prior, mixed(mid)).first > repair_slack) lo = mid;
            else hi = mid;
        }
        MeanDistribution repaired = mixed(hi);
        repaired.atoms = detail::merge_by_action(g, repaired.atoms);
        repaired.payoff = expected_value(g, repaired);
        sol.repair_weight = hi;
        // Mixing shrinks the whole integrated CDF, which is costly when the
        // violation sits where it is small (near 0). The partition read off
        // the LP atoms induces an exact contraction; keep it when it pays more.
        try {
            double gh = 1.0 / static_cast<double>(N - 1);
            DeterministicRepresentation rep = canonicalize(d, g, std::max(1e-7, 4.0 * gh * gh), 2.0 * gh);
            for (const auto& cand : {rep, detail::fit_cell_means(rep, 4.0 * gh)}) {
                MeanDistribution c = induced_distribution(cand);
                c.payoff = expected_value(g, c);
                if (c.payoff > repaired.payoff && mpc_max_violation(g.prior, c).first <= repair_slack) {
                    repaired = c;
                    sol.repair_weight = 0.0;
                }
            }
        } catch (const Error&) {
        }
        d = repaired;
    }
    d.payoff = expected_value(g, d);
    sol.distribution = d;
    return sol;
}

inline MeanDistribution solve_lp(const GameSpec& g, int grid_size = 481) {
    return solve_lp_detail(g, grid_size).distribution;
}

// ---------------------------------------------------------------------------
// Canonical representation of a distribution

/// Split [0,1] at the points where the integrated CDF of `d` touches that of
/// the prior, then read each piece as revealed, pooling (one atom) or
/// bi-pooling (two atoms). Atoms within `merge_dist` of each other inside a
/// piece are merged first, and atoms that close to a cutoff snap onto it.
inline DeterministicRepresentation canonicalize(const MeanDistribution& d, const GameSpec& g, double tight_tol,
                                                double merge_dist) {
    const Prior& prior = g.prior;
    std::vector<Atom> atoms;
    for (const auto& a : d.atoms)
        if (a.p > 1e-12) atoms.push_back(a);
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });

    auto gap = [&](double x) { return prior.integrated_cdf(x) - integrated_cdf(prior, d, x); };
    auto G_at = [&](double x) {
        double s = prior.mass(d.revealed.intersect(IntervalUnion{{0.0, x}}));
        for (const auto& a : atoms)
            if (a.x <= x) s += a.p;
        return s;
    };

    std::vector<double> cuts{0.0, 1.0};
    for (const auto& p : d.revealed.pieces()) {
        cuts.push_back(p.lo);
        cuts.push_back(p.hi);
    }
    for (std::size_t k = 0; k + 1 < atoms.size(); ++k) {
        double a = atoms[k].x, b = atoms[k + 1].x;
        if (b - a <= merge_dist) continue;
        if (!d.revealed.intersect(IntervalUnion{{a, b}}).prune(1e-12).empty()) continue;
        double t = std::clamp(prior.quantile(std::clamp(G_at(a), 0.0, 1.0)), a, b);
        if (gap(t) <= tight_tol) cuts.push_back(t);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double u, double v) { return std::abs(u - v) <= 1e-12; }),
               cuts.end());

    std::vector<IntervalUnion> cells(g.n());
    std::size_t next_atom = 0;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        Interval seg{cuts[s], cuts[s + 1]};
        if (seg.length() <= 1e-12) continue;
        double mid = 0.5 * (seg.lo + seg.hi);
        if (d.revealed.contains(mid)) {
            for (std::size_t i = 0; i < g.n(); ++i) {
                IntervalUnion part = IntervalUnion{seg}.intersect(IntervalUnion{g.action_cell(i)}).prune(1e-12);
                cells[i] = cells[i].unite(part);
            }
            continue;
        }
        std::vector<Atom> inside;
        while (next_atom < atoms.size() && (atoms[next_atom].x <= seg.hi || s + 2 == cuts.size())) {
            const Atom& a = atoms[next_atom];
            if (!inside.empty() && a.x - inside.back().x <= merge_dist) {
                double p = inside.back().p + a.p;
                inside.back().x = (inside.back().x * inside.back().p + a.x * a.p) / p;
                inside.back().p = p;
            } else {
                inside.push_back(a);
            }
            ++next_atom;
        }
        for (auto& a : inside)
            for (double c : g.cutoffs)
                if (std::abs(a.x - c) <= std::max(merge_dist, 1e-10)) a.x = c;
        if (inside.size() == 1) {
            std::size_t i = action_at(g, std::clamp(inside[0].x, 0.0, 1.0));
            cells[i] = cells[i].unite(IntervalUnion{seg});
        } else if (inside.size() == 2) {
            NestedPair np;
            try {
                np = nested_interval_rep(prior, seg, inside[0].x, inside[1].x);
            } catch (const InfeasibleError& e) {
                throw SegmentRecoveryError(std::string("segment recovery failed: ") + e.what() +
                                           " (refine the LP grid)");
            }
            std::size_t lo = action_at(g, inside[0].x), hi = action_at(g, inside[1].x);
            cells[lo] = cells[lo].unite(np.low_cell());
            cells[hi] = cells[hi].unite(np.high_cell());
        } else {
            throw SegmentRecoveryError("segment [" + std::to_string(seg.lo) + ", " + std::to_string(seg.hi) + "] holds " +
                                       std::to_string(inside.size()) + " atoms (refine the LP grid)");
        }
    }
    return tidy(DeterministicRepresentation{g, cells});
}

inline DeterministicRepresentation canonicalize(const LpSolution& s, const GameSpec& g) {
    double h = 1.0 / static_cast<double>(s.grid.size() - 1);
    return canonicalize(s.distribution, g, std::max(1e-7, 4.0 * h * h), 2.0 * h);
}

inline DeterministicRepresentation canonicalize(const BiPoolingSolution& s, const GameSpec&) { return s.canonical; }

// ---------------------------------------------------------------------------
// Exact solvers for two and three actions

namespace three {

/// One member of the nested family indexed by b = sup B_1:
/// B_0 = [0,y], B_1 = [h,b], B_2 = [y,h] U [b,1]. In the first branch
/// E[B_1] = gamma_1 and E[B_2] = gamma_2; in the second B_0 is empty and
/// h is the largest point keeping E[B_2] >= gamma_2.
struct Member {
    bool ok = false;
    int branch = 0;
    double y = 0.0, h = 0.0, b = 0.0;
    double value = -std::numeric_limits<double>::infinity();
    double slope = 0.0;  // dV/db
};

struct Family {
    const GameSpec& g;
    double g1, g2, v1, v2;
    RootOptions tight{1e-15, 1e-15, 300};

    explicit Family(const GameSpec& spec)
        : g(spec), g1(spec.gamma(1)), g2(spec.gamma(2)), v1(spec.v(1)), v2(spec.v(2)) {}

    double f(double x) const { return g.prior.density(x); }

    // Mean of [a1,b1] U [a2,b2], pieces possibly empty.
    double mean2(double a1, double b1, double a2, double b2) const {
        double m = g.prior.mass(a1, b1) + g.prior.mass(a2, b2);
        if (!(m > 0.0)) return std::numeric_limits<double>::quiet_NaN();
        return (g.prior.moment(a1, b1) + g.prior.moment(a2, b2)) / m;
    }

    /// Smallest admissible b: E[[b,1]] = gamma_2, or 0 when the prior mean
    /// already reaches gamma_2.
    double b_min() const {
        if (g.prior.mean() >= g2) return 0.0;
        return bisect([&](double b) { return g.prior.interval_mean(b, 1.0) - g2; }, 0.0, g2, tight);
    }

    Member at(double b) const {
        Member r;
        r.b = b;
        if (!(b > g1) || !(g.prior.mass(b, 1.0) > 0.0)) return r;
        double ha = solve_h(g.prior, g1, b, tight);
        double top = mean2(0.0, ha, b, 1.0);
        if (std::isnan(top)) return r;
        if (top <= g2) {
            r.branch = 1;
            r.h = ha;
            if (ha <= 0.0) {
                r.y = 0.0;
            } else {
                auto e = [&](double y) { return mean2(y, ha, b, 1.0) - g2; };
                // At b = b_min the top piece alone has mean gamma_2 and y = h;
                // rounding may put e(h) a hair below zero there.
                double eh = e(ha);
                if (eh < -1e-9) return r;
                r.y = eh <= 0.0 ? ha : bisect(e, 0.0, ha, tight);
            }
        } else {
            r.branch = 2;
            r.y = 0.0;
            if (g.prior.mean() >= g2) {
                r.h = b;
            } else {
                double cap = std::min(b, g2);
                auto e = [&](double h) { return mean2(0.0, h, b, 1.0) - g2; };
                r.h = e(cap) >= 0.0 ? cap : bisect(e, ha, cap, tight);
            }
        }
        double m1 = g.prior.mass(r.h, b);
        if (m1 > 0.0) {
            double e1 = g.prior.interval_mean(r.h, b);
            if (e1 < g1 - 1e-9 || e1 > g2 + 1e-9) return r;
        }
        double m2 = g.prior.mass(r.y, r.h) + g.prior.mass(b, 1.0);
        r.value = v1 * m1 + v2 * m2;
        r.ok = true;

        if (r.branch == 1) {
            double hp = r.h > 0.0 ? (b - g1) * f(b) / ((r.h - g1) * f(r.h)) : 0.0;
            double yp = 0.0;
            if (r.h > 0.0) yp = ((r.h - g2) * f(r.h) * hp - (b - g2) * f(b)) / ((r.y - g2) * f(r.y));
            r.slope = (v1 - v2) * f(b) + (v2 - v1) * f(r.h) * hp - v2 * f(r.y) * yp;
        } else if (r.h < b) {
            double hp = (b - g2) * f(b) / ((r.h - g2) * f(r.h));
            r.slope = (v2 - v1) * (f(r.h) * hp - f(b));
        }
        return r;
    }

    DeterministicRepresentation rep(const Member& m) const {
        DeterministicRepresentation r{g, {}};
        r.cells.push_back(IntervalUnion{{0.0, m.y}});
        r.cells.push_back(IntervalUnion{{m.h, m.b}});
        r.cells.push_back(IntervalUnion{{m.y, m.h}, {m.b, 1.0}});
        return tidy(r);
    }

    /// Maximize the family value over b in [lo, hi]: dense scan, then
    /// bisection on the sign of dV/db around the best sample.
    Member best(double lo, double hi, int samples = 256) const {
        Member top;
        if (!(hi >= lo)) return top;
        std::vector<Member> pts;
        for (int k = 0; k <= samples; ++k) pts.push_back(at(lo + (hi - lo) * k / samples));
        int kbest = -1;
        for (int k = 0; k <= samples; ++k)
            if (pts[k].ok && (kbest < 0 || pts[k].value > pts[kbest].value)) kbest = k;
        if (kbest < 0) return top;
        top = pts[kbest];
        for (int side : {-1, 1}) {
            int j = kbest + side;
            if (j < 0 || j > samples || !pts[j].ok) continue;
            double a = std::min(pts[kbest].b, pts[j].b), c = std::max(pts[kbest].b, pts[j].b);
            Member ma = at(a), mc = at(c);
            if (!(ma.ok && mc.ok && ma.slope > 0.0 && mc.slope < 0.0)) continue;
            for (int it = 0; it < 100 && c - a > 1e-14; ++it) {
                double mid = 0.5 * (a + c);
                Member mm = at(mid);
                if (!mm.ok) break;
                if (mm.slope > 0.0) a = mid;
                else c = mid;
            }
            Member cand = at(0.5 * (a + c));
            if (cand.ok && cand.value >= top.value) top = cand;
        }
        return top;
    }
};

}  // namespace three

namespace detail {

struct Candidate {
    DeterministicRepresentation rep;
    double value;
};

/// Lowest states pooled or revealed, everything above x pooled to action i:
/// x solves E[[x,1]] = gamma_i, or x = 0 when the prior mean already lies in A_i.
inline std::optional<DeterministicRepresentation> pool_top(const GameSpec& g, std::size_t i) {
    double mu = g.prior.mean();
    double target = g.gamma(i);
    if (mu > g.gamma(i + 1) && i + 1 < g.n()) return std::nullopt;
    double x = 0.0;
    if (mu < target) x = bisect([&](double t) { return g.prior.interval_mean(t, 1.0) - target; }, 0.0, target,
                                {1e-15, 1e-15, 300});
    DeterministicRepresentation r{g, std::vector<IntervalUnion>(g.n())};
    r.cells[0] = IntervalUnion{{0.0, x}};
    r.cells[i] = IntervalUnion{{x, 1.0}};
    return tidy(r);
}

}  // namespace detail

inline BiPoolingSolution solve_two_action(const GameSpec& g) {
    require_valid(g);
    if (g.n() != 2) throw UnsupportedError("solve_two_action needs exactly two actions");
    return solution_from_rep(*detail::pool_top(g, 1));
}

inline BiPoolingSolution solve_three_action(const GameSpec& g) {
    require_valid(g);
    if (g.n() != 3) throw UnsupportedError("solve_three_action needs exactly three actions");
    std::vector<detail::Candidate> cands;
    auto add = [&](const DeterministicRepresentation& r) {
        if (is_obedient(r).obedient) cands.push_back({r, payoff(r)});
    };
    for (std::size_t i : {1, 2})
        if (auto r = detail::pool_top(g, i)) add(*r);
    add(full_disclosure(g));

    three::Family fam(g);
    double lo = std::max(fam.b_min(), g.gamma(1));
    three::Member m = fam.best(lo, 1.0);
    if (m.ok) add(fam.rep(m));

    std::size_t best = 0;
    for (std::size_t k = 1; k < cands.size(); ++k)
        if (cands[k].value > cands[best].value + 1e-12) best = k;
    return solution_from_rep(cands[best].rep);
}

/// Value of the commitment problem: exact for up to three actions,
/// otherwise the LP on grids of 481 and 961 points, which must agree
/// within 1e-3.
inline double commitment_payoff(const GameSpec& g) {
    require_valid(g);
    if (g.n() == 2) return solve_two_action(g).distribution.payoff;
    if (g.n() == 3) return solve_three_action(g).distribution.payoff;
    double coarse = solve_lp(g, 481).payoff;
    double fine = solve_lp(g, 961).payoff;
    if (std::abs(fine - coarse) > 1e-3)
        throw SolverError("LP values on grids 481 and 961 differ by " + std::to_string(std::abs(fine - coarse)));
    return fine;
}

/// Commitment solution with its canonical representation: exact for up to
/// three actions, LP plus segment recovery beyond that.
inline BiPoolingSolution commitment_solution(const GameSpec& g, int grid_size = 961) {
    require_valid(g);
    if (g.n() == 2) return solve_two_action(g);
    if (g.n() == 3) return solve_three_action(g);
    LpSolution lp = solve_lp_detail(g, grid_size);
    BiPoolingSolution sol = solution_from_rep(canonicalize(lp, g));
    sol.distribution = lp.distribution;
    return sol;
}

}  // namespace disclosure
