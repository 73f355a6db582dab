#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "disclosure/disclosure.hpp"

namespace testutil {

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
    if (b <= a) return 0.0;
    double h = (b - a) / n, s = f(a) + f(b);
    for (int k = 1; k < n; ++k) s += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

/// Density from raw knots/values, independent of the library's bookkeeping.
struct RawDensity {
    std::vector<double> x, d;
    double scale = 1.0;

    RawDensity(std::vector<double> knots, std::vector<double> vals) : x(std::move(knots)), d(std::move(vals)) {
        double tot = 0.0;
        for (std::size_t k = 0; k + 1 < x.size(); ++k) tot += simpson([&](double t) { return raw(t); }, x[k], x[k + 1], 20);
        scale = 1.0 / tot;
    }
    double raw(double t) const {
        for (std::size_t k = 0; k + 1 < x.size(); ++k)
            if (t <= x[k + 1]) return d[k] + (d[k + 1] - d[k]) * (t - x[k]) / (x[k + 1] - x[k]);
        return d.back();
    }
    double operator()(double t) const { return scale * raw(t); }

    // Integrals over [a,b] split at knots so Simpson is exact per piece.
    double integrate(const std::function<double(double)>& g, double a, double b, int n = 200) const {
        double s = 0.0;
        std::vector<double> cuts{a};
        for (double k : x)
            if (k > a && k < b) cuts.push_back(k);
        cuts.push_back(b);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) s += simpson(g, cuts[i], cuts[i + 1], n);
        return s;
    }
    double mass(double a, double b) const { return integrate([&](double t) { return (*this)(t); }, a, b); }
    double mean(double a, double b) const {
        return integrate([&](double t) { return t * (*this)(t); }, a, b) / mass(a, b);
    }
};

inline disclosure::GameSpec thirds_game() {
    return {disclosure::Prior::uniform(), {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}, {0.0, 1.0, 3.0}};
}
inline disclosure::GameSpec flat_top_game() { return {disclosure::Prior::uniform(), {0.0, 0.5, 0.9, 1.0}, {0.0, 1.0, 1.1}}; }
inline disclosure::GameSpec close_cutoff_game() { return {disclosure::Prior::uniform(), {0.0, 0.6, 0.7, 1.0}, {0.0, 1.0, 1.3}}; }

/// Canonical representation of the thirds game as stated in closed form.
inline disclosure::DeterministicRepresentation thirds_game_rep() {
    using disclosure::IntervalUnion;
    return {thirds_game(),
            {IntervalUnion{{0.0, 8.0 / 48}}, IntervalUnion{{11.0 / 48, 21.0 / 48}},
             IntervalUnion{{8.0 / 48, 11.0 / 48}, {21.0 / 48, 1.0}}}};
}

inline disclosure::DeterministicRepresentation flat_top_game_rep() {
    using disclosure::IntervalUnion;
    return {flat_top_game(), {IntervalUnion::point(0.0), IntervalUnion{{0.0, 1.0}}, IntervalUnion::point(0.9)}};
}

/// Random increasing piecewise-linear prior with a few knots.
inline disclosure::Prior random_increasing_prior(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nk(0, 3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int inner = nk(rng);
    std::vector<double> knots{0.0};
    std::vector<double> in;
    for (int k = 0; k < inner; ++k) in.push_back(0.05 + 0.9 * u(rng));
    std::sort(in.begin(), in.end());
    for (double k : in)
        if (k - knots.back() > 0.02) knots.push_back(k);
    knots.push_back(1.0);
    std::vector<double> dens;
    double level = 0.3 + u(rng);
    for (std::size_t k = 0; k < knots.size(); ++k) {
        dens.push_back(level);
        level += 0.8 * u(rng);
    }
    return disclosure::Prior::piecewise_linear(knots, dens);
}

/// Random three-action spec: cutoffs from a sorted uniform draw with
/// minimum gap 0.05, v_2 / v_1 in [1.1, 4].
inline disclosure::GameSpec random_three_action(std::mt19937_64& rng, disclosure::Prior prior = disclosure::Prior::uniform()) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double a, b;
    do {
        a = u(rng);
        b = u(rng);
        if (a > b) std::swap(a, b);
    } while (a < 0.05 || b - a < 0.05 || 1.0 - b < 0.05);
    double v1 = 0.5 + u(rng);
    double ratio = 1.1 + 2.9 * u(rng);
    return {prior, {0.0, a, b, 1.0}, {0.0, v1, v1 * ratio}};
}

}  // namespace testutil
