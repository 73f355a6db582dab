#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "interval_union.hpp"
#include "roots.hpp"

namespace disclosure {

/// Distribution on [0,1] with a strictly positive, piecewise-linear density.
/// The uniform prior is the one-segment special case. All moments are
/// evaluated in closed form per linear segment.
class Prior {
public:
    enum class Kind { uniform, plinear };

    Prior() : Prior(Kind::uniform, {0.0, 1.0}, {1.0, 1.0}) {}

    static Prior uniform() { return Prior(); }

    /// Density linearly interpolated between (knots[k], density[k]) and
    /// rescaled to integrate to one.
    static Prior piecewise_linear(std::vector<double> knots, std::vector<double> density) {
        return Prior(Kind::plinear, std::move(knots), std::move(density));
    }

    Kind kind() const { return kind_; }
    const std::vector<double>& knots() const { return x_; }
    const std::vector<double>& knot_density() const { return d_; }

    double density(double x) const {
        check_point(x, "density");
        std::size_t j = segment(x);
        return d_[j] + s_[j] * (x - x_[j]);
    }

    double cdf(double x) const {
        check_point(x, "cdf");
        std::size_t j = segment(x);
        double t = x - x_[j];
        return F_[j] + d_[j] * t + s_[j] * t * t / 2.0;
    }

    /// x -> integral of F over [0, x].
    double integrated_cdf(double x) const {
        check_point(x, "integrated_cdf");
        std::size_t j = segment(x);
        double t = x - x_[j];
        return I_[j] + F_[j] * t + d_[j] * t * t / 2.0 + s_[j] * t * t * t / 6.0;
    }

    double mean() const { return mean_; }

    /// True when the density is non-decreasing on [0,1].
    bool density_nondecreasing() const {
        for (std::size_t k = 0; k + 1 < d_.size(); ++k)
            if (d_[k + 1] < d_[k]) return false;
        return true;
    }

    double mass(double lo, double hi) const {
        double m = 0.0, w = 0.0;
        accumulate(lo, hi, m, w);
        return m;
    }

    double mass(const IntervalUnion& s) const {
        double m = 0.0, w = 0.0;
        for (const auto& p : s.pieces()) accumulate(p.lo, p.hi, m, w);
        return m;
    }

    double moment(double lo, double hi) const {
        double m = 0.0, w = 0.0;
        accumulate(lo, hi, m, w);
        return w;
    }

    /// Integral of x f(x) over s.
    double moment(const IntervalUnion& s) const {
        double m = 0.0, w = 0.0;
        for (const auto& p : s.pieces()) accumulate(p.lo, p.hi, m, w);
        return w;
    }

    double partial_mean(const IntervalUnion& s) const {
        double m = 0.0, w = 0.0;
        for (const auto& p : s.pieces()) accumulate(p.lo, p.hi, m, w);
        if (!(m > 0.0)) throw ZeroMassError("partial_mean: set " + s.str() + " has zero prior mass");
        return std::clamp(w / m, s.inf(), s.sup());
    }

    /// Conditional mean on [lo, hi], extended continuously to lo at lo == hi.
    double interval_mean(double lo, double hi) const {
        if (hi <= lo) return lo;
        double m = 0.0, w = 0.0;
        accumulate(lo, hi, m, w);
        return std::clamp(w / m, lo, hi);
    }

    /// Inverse CDF.
    double quantile(double p) const {
        if (p <= 0.0) return 0.0;
        if (p >= 1.0) return 1.0;
        return bisect([&](double x) { return cdf(x) - p; }, 0.0, 1.0, {1e-15, 1e-15, 200});
    }

private:
    Prior(Kind kind, std::vector<double> knots, std::vector<double> density)
        : kind_(kind), x_(std::move(knots)), d_(std::move(density)) {
        if (x_.size() < 2 || x_.size() != d_.size())
            throw DomainError("prior: need at least two knots and one density value per knot");
        if (x_.front() != 0.0 || x_.back() != 1.0) throw DomainError("prior: knots must start at 0 and end at 1");
        for (std::size_t k = 0; k + 1 < x_.size(); ++k)
            if (!(x_[k] < x_[k + 1])) throw DomainError("prior: knots must be strictly ascending");
        for (double v : d_)
            if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("prior: density values must be positive and finite");

        double total = 0.0;
        for (std::size_t k = 0; k + 1 < x_.size(); ++k) total += (x_[k + 1] - x_[k]) * (d_[k] + d_[k + 1]) / 2.0;
        for (double& v : d_) v /= total;

        std::size_t n = x_.size() - 1;
        s_.resize(n);
        F_.assign(n + 1, 0.0);
        I_.assign(n + 1, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            double L = x_[j + 1] - x_[j];
            s_[j] = (d_[j + 1] - d_[j]) / L;
            F_[j + 1] = F_[j] + d_[j] * L + s_[j] * L * L / 2.0;
            I_[j + 1] = I_[j] + F_[j] * L + d_[j] * L * L / 2.0 + s_[j] * L * L * L / 6.0;
        }
        F_[n] = 1.0;
        double m = 0.0, w = 0.0;
        accumulate(0.0, 1.0, m, w);
        mean_ = w;
    }

    static void check_point(double x, const char* what) {
        if (!(x >= 0.0 && x <= 1.0)) throw DomainError(std::string(what) + ": point " + std::to_string(x) + " outside [0,1]");
    }

    std::size_t segment(double x) const {
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        std::size_t j = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
        return std::min(j, s_.size() - 1);
    }

    // Mass and first moment of [lo, hi], split at knots. On each linear
    // piece of length L and midpoint c: mass = L f(c), moment = L (c f(c) + s L^2 / 12).
    void accumulate(double lo, double hi, double& m, double& w) const {
        if (!(lo >= 0.0 && hi <= 1.0)) throw DomainError("interval outside [0,1]");
        if (!(hi > lo)) return;
        for (std::size_t j = segment(lo); j < s_.size() && x_[j] < hi; ++j) {
            double a = std::max(lo, x_[j]);
            double b = std::min(hi, x_[j + 1]);
            if (!(b > a)) continue;
            double L = b - a;
            double c = 0.5 * (a + b);
            double fc = d_[j] + s_[j] * (c - x_[j]);
            m += L * fc;
            w += L * (c * fc + s_[j] * L * L / 12.0);
        }
    }

    Kind kind_;
    std::vector<double> x_, d_, s_, F_, I_;
    double mean_ = 0.5;
};

/// h in [0, gamma_lo] with E[w | w in [h, gamma_hi]] = gamma_lo. When even
/// h = 0 gives a mean at or above gamma_lo, no interior solution exists
/// and 0 is returned.
inline double solve_h(const Prior& prior, double gamma_lo, double gamma_hi, RootOptions opt = {}) {
    if (!(0.0 <= gamma_lo && gamma_lo < gamma_hi && gamma_hi <= 1.0))
        throw DomainError("solve_h: need 0 <= gamma_lo < gamma_hi <= 1");
    auto g = [&](double h) { return prior.interval_mean(h, gamma_hi) - gamma_lo; };
    if (g(0.0) >= 0.0) return 0.0;
    return bisect(g, 0.0, gamma_lo, opt);
}

/// Parameter t in bracket with partial_mean(family(t)) = target.
inline double solve_mean_equation(const Prior& prior, const std::function<IntervalUnion(double)>& family, double target,
                                  std::pair<double, double> bracket, RootOptions opt = {}) {
    auto g = [&](double t) { return prior.partial_mean(family(t)) - target; };
    return bisect_monotone(g, bracket.first, bracket.second, opt);
}

}  // namespace disclosure
