#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "errors.hpp"

namespace disclosure {

struct RootOptions {
    double residual_tol = 1e-10;
    double param_tol = 1e-12;
    int max_iter = 200;
};

/// Bisection for g(t) = 0 on [lo, hi]. Requires g(lo) and g(hi) of
/// opposite sign (or zero). Stops when |g| <= residual_tol or the bracket
/// shrinks below param_tol, whichever comes first; the returned point is
/// the bracket end with the smaller |g| in the latter case.
inline double bisect(const std::function<double(double)>& g, double lo, double hi, RootOptions opt = {}) {
    double glo = g(lo);
    double ghi = g(hi);
    if (std::isnan(glo) || std::isnan(ghi)) throw SolverError("bisect: residual is NaN at bracket end");
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if ((glo > 0) == (ghi > 0))
        throw NoBracketError("bisect: residuals " + std::to_string(glo) + " and " + std::to_string(ghi) +
                             " share a sign on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    for (int it = 0; it < opt.max_iter; ++it) {
        double mid = 0.5 * (lo + hi);
        double gm = g(mid);
        if (std::abs(gm) <= opt.residual_tol && hi - lo <= 1e3 * opt.param_tol) return mid;
        if (gm == 0.0) return mid;
        if ((gm > 0) == (glo > 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
            ghi = gm;
        }
        if (hi - lo <= opt.param_tol) break;
    }
    return std::abs(glo) <= std::abs(ghi) ? lo : hi;
}

/// Like bisect, but additionally samples g at a few interior points and
/// raises NonMonotoneError if the samples are not ordered the way the end
/// residuals are.
inline double bisect_monotone(const std::function<double(double)>& g, double lo, double hi, RootOptions opt = {}) {
    constexpr int probes = 8;
    double prev = g(lo);
    double last = g(hi);
    bool up = last >= prev;
    for (int k = 1; k <= probes; ++k) {
        double t = lo + (hi - lo) * k / (probes + 1);
        double cur = g(t);
        double slack = 1e-12 * (1.0 + std::abs(cur));
        if ((up && cur < prev - slack) || (!up && cur > prev + slack))
            throw NonMonotoneError("residual map is not monotone on the bracket");
        prev = cur;
    }
    return bisect(g, lo, hi, opt);
}

}  // namespace disclosure
