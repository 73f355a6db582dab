#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "interval_union.hpp"
#include "prior.hpp"

namespace disclosure {

/// Receiver takes action a_i when the posterior mean lies in
/// A_i = [gamma_i, gamma_{i+1}]; the sender then gets values[i].
struct GameSpec {
    Prior prior;
    std::vector<double> cutoffs;  // gamma_0 = 0, ..., gamma_n = 1
    std::vector<double> values;   // v_0 = 0 < v_1 < ... < v_{n-1}

    std::size_t n() const { return values.size(); }
    double gamma(std::size_t i) const { return cutoffs.at(i); }
    double v(std::size_t i) const { return values.at(i); }
    Interval action_cell(std::size_t i) const { return {cutoffs.at(i), cutoffs.at(i + 1)}; }
};

inline std::vector<std::string> validate(const GameSpec& g) {
    std::vector<std::string> out;
    const auto n = g.values.size();
    if (n < 2) out.push_back("need at least two actions");
    if (g.cutoffs.size() != n + 1) {
        out.push_back("expected " + std::to_string(n + 1) + " cutoffs, got " + std::to_string(g.cutoffs.size()));
    } else if (!g.cutoffs.empty()) {
        if (g.cutoffs.front() != 0.0) out.push_back("first cutoff must be 0");
        if (g.cutoffs.back() != 1.0) out.push_back("last cutoff must be 1");
    }
    for (std::size_t k = 0; k + 1 < g.cutoffs.size(); ++k) {
        if (!(g.cutoffs[k] <= g.cutoffs[k + 1])) {
            out.push_back("cutoffs not ascending");
            break;
        }
    }
    for (double c : g.cutoffs)
        if (!std::isfinite(c) || c < 0.0 || c > 1.0) {
            out.push_back("cutoffs must lie in [0,1]");
            break;
        }
    if (!g.values.empty() && g.values.front() != 0.0) out.push_back("v_0 must be 0");
    for (std::size_t k = 0; k + 1 < g.values.size(); ++k) {
        if (!(g.values[k] < g.values[k + 1])) {
            out.push_back("values not increasing");
            break;
        }
    }
    return out;
}

inline void require_valid(const GameSpec& g) {
    auto v = validate(g);
    if (v.empty()) return;
    std::string msg = "invalid game spec:";
    for (const auto& s : v) msg += " " + s + ";";
    throw SchemaError(msg);
}

/// Index of the action taken at posterior mean x; at a cutoff the higher
/// action wins.
inline std::size_t action_at(const GameSpec& g, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("value_at: point " + std::to_string(x) + " outside [0,1]");
    std::size_t i = 0;
    for (std::size_t k = 1; k < g.n(); ++k)
        if (g.cutoffs[k] <= x) i = k;
    return i;
}

inline double value_at(const GameSpec& g, double x) { return g.values[action_at(g, x)]; }

/// Sender payoff under full disclosure.
inline double unraveling_payoff(const GameSpec& g) {
    double r = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) r += g.values[i] * g.prior.mass(g.cutoffs[i], g.cutoffs[i + 1]);
    return r;
}

/// Sender payoff without information; cheap talk cannot do better.
inline double cheap_talk_payoff(const GameSpec& g) { return value_at(g, g.prior.mean()); }

}  // namespace disclosure
