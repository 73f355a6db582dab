#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "equilibrium.hpp"
#include "errors.hpp"
#include "game.hpp"

namespace disclosure {

class InsufficientSmoothnessError : public DomainError {
public:
    using DomainError::DomainError;
};

// ---------------------------------------------------------------------------
// Seller with verifiable quality

/// Buyer of type theta in [0,1] gets theta U(q) - p q from q units.
/// Utility is either U(q) = q^(1-sigma) or a table U(0), U(1), ...
struct SellerModel {
    enum class Kind { crra, table };
    Kind kind = Kind::crra;
    double sigma = 0.5;
    std::vector<double> table;
    double price = 0.25;
    double cost = 0.0;
    Prior prior;

    /// Utility of q units; only defined for integer q (table) or q >= 0 (crra).
    double U(double q) const {
        if (kind == Kind::crra) return std::pow(q, 1.0 - sigma);
        auto k = static_cast<std::size_t>(q);
        if (k >= table.size()) throw DomainError("utility table has no entry for q = " + std::to_string(k));
        return table[k];
    }
};

struct SellerGame {
    GameSpec spec;
    std::vector<double> theta;  // theta_1..theta_n
    std::vector<std::string> warnings;
};

/// theta_q = p / (U(q) - U(q-1)) is the type indifferent between q-1 and q
/// units. Only units with theta_q < 1 are ever bought; the seller earns
/// p - c per unit.
inline SellerGame seller_to_game(const SellerModel& m) {
    if (!(m.price > 0.0)) throw SchemaError("seller: price must be positive");
    if (!(m.cost >= 0.0 && m.cost < m.price)) throw SchemaError("seller: cost must lie in [0, price)");
    SellerGame out;
    std::size_t qmax = 0;
    if (m.kind == SellerModel::Kind::crra) {
        if (!(m.sigma > 0.0 && m.sigma < 1.0))
            throw SchemaError("seller: CRRA utility q^(1-sigma) needs 0 < sigma < 1 (U(0) = 0, strictly concave)");
        qmax = 100000;
    } else {
        if (m.table.size() < 2) throw SchemaError("seller: utility table needs at least U(0) and U(1)");
        if (m.table[0] != 0.0) throw SchemaError("seller: utility table must start with U(0) = 0");
        for (std::size_t q = 1; q < m.table.size(); ++q)
            if (!(m.table[q] > m.table[q - 1])) throw SchemaError("seller: utility must be strictly increasing");
        for (std::size_t q = 1; q + 1 < m.table.size(); ++q)
            if (!(m.table[q + 1] - m.table[q] < m.table[q] - m.table[q - 1]))
                throw SchemaError("seller: utility must be strictly concave");
        qmax = m.table.size() - 1;
    }
    std::vector<double> cut{0.0};
    std::vector<double> val{0.0};
    for (std::size_t q = 1; q <= qmax; ++q) {
        double th = m.price / (m.U(static_cast<double>(q)) - m.U(static_cast<double>(q - 1)));
        if (th >= 1.0) {
            if (q == 1) throw SchemaError("seller: no type buys even one unit (theta_1 >= 1)");
            out.warnings.push_back("truncated at " + std::to_string(q - 1) + " units: theta_" + std::to_string(q) +
                                   " = " + std::to_string(th) + " >= 1");
            break;
        }
        if (q == qmax && m.kind == SellerModel::Kind::table)
            out.warnings.push_back("utility table exhausted with theta_" + std::to_string(q) + " < 1");
        out.theta.push_back(th);
        cut.push_back(th);
        val.push_back((m.price - m.cost) * static_cast<double>(q));
    }
    cut.push_back(1.0);
    out.spec = GameSpec{m.prior, cut, val};
    require_valid(out.spec);
    return out;
}

struct PrudenceReport {
    bool prudence = false;           // P(q) > 2 A(q) on the whole grid
    bool density_increasing = false;
    bool holds = false;              // both of the above
    bool gap_conditions_literal = false;  // gap conditions evaluated on the generated game
    std::vector<double> q;
    std::vector<double> A, P;
};

/// Absolute risk aversion A = -U''/U' and prudence P = -U'''/U''. For CRRA
/// these are sigma/q and (1+sigma)/q on 101 points of [1, n+1]; for a table
/// they are finite differences at every interior point that has them.
inline PrudenceReport check_prudence(const SellerModel& m) {
    PrudenceReport r;
    if (m.kind == SellerModel::Kind::crra) {
        if (!(m.sigma > 0.0)) throw SchemaError("seller: sigma must be positive");
        double top = 2.0;
        if (m.sigma < 1.0) {
            try {
                top = static_cast<double>(seller_to_game(m).theta.size()) + 1.0;
            } catch (const SchemaError&) {
            }
        }
        for (int k = 0; k <= 100; ++k) {
            double q = 1.0 + (top - 1.0) * k / 100.0;
            r.q.push_back(q);
            r.A.push_back(m.sigma / q);
            r.P.push_back((1.0 + m.sigma) / q);
        }
    } else {
        if (m.table.size() < 4) throw InsufficientSmoothnessError("prudence needs a utility table with at least 4 points");
        std::vector<double> d1, d2, d3;
        for (std::size_t q = 1; q < m.table.size(); ++q) d1.push_back(m.table[q] - m.table[q - 1]);
        for (std::size_t q = 1; q < d1.size(); ++q) d2.push_back(d1[q] - d1[q - 1]);
        for (std::size_t q = 1; q < d2.size(); ++q) d3.push_back(d2[q] - d2[q - 1]);
        for (std::size_t k = 0; k < d3.size(); ++k) {
            r.q.push_back(static_cast<double>(k + 1));
            r.A.push_back(-d2[k] / d1[k]);
            r.P.push_back(-d3[k] / d2[k]);
        }
    }
    r.prudence = !r.q.empty();
    for (std::size_t k = 0; k < r.q.size(); ++k) r.prudence = r.prudence && r.P[k] > 2.0 * r.A[k];
    r.density_increasing = m.prior.density_nondecreasing();
    r.holds = r.prudence && r.density_increasing;
    try {
        r.gap_conditions_literal = check_cni(seller_to_game(m).spec);
    } catch (const SchemaError&) {
        r.gap_conditions_literal = false;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Amendment voting

/// Voter utilities over the status quo (0), amended bill ab and bill b are
/// alpha_k + beta_k w for k in {ab, b}.
struct Voter {
    double alpha_ab = 0.0, alpha_b = 0.0, beta_ab = 0.0, beta_b = 0.0;

    double gamma1() const { return -alpha_ab / beta_ab; }
    double gamma2() const { return (alpha_ab - alpha_b) / (beta_b - beta_ab); }
};

struct VotingModel {
    std::vector<Voter> voters;
    double v_ab = 1.0;
    double v_b = 2.0;
    Prior prior;
};

struct VotingGame {
    GameSpec spec;
    std::size_t median = 0;
    std::vector<double> gamma1, gamma2;
};

inline void check_voting(const VotingModel& m) {
    if (m.voters.empty() || m.voters.size() % 2 == 0) throw SchemaError("voting: need an odd number of voters");
    if (!(m.v_ab > 0.0 && m.v_b > m.v_ab)) throw SchemaError("voting: need v_b > v_ab > 0");
    for (std::size_t j = 0; j < m.voters.size(); ++j) {
        const Voter& v = m.voters[j];
        std::string who = "voting: voter " + std::to_string(j);
        if (!(v.beta_b > v.beta_ab && v.beta_ab > 0.0)) throw SchemaError(who + " needs beta_b > beta_ab > 0");
        if (!(0.0 > v.alpha_ab && v.alpha_ab > v.alpha_b)) throw SchemaError(who + " needs 0 > alpha_ab > alpha_b");
        if (!(0.0 < v.gamma1() && v.gamma1() < v.gamma2() && v.gamma2() < 1.0))
            throw SchemaError(who + " needs 0 < gamma_1 < gamma_2 < 1");
    }
}

/// The game the expert plays with the median voter, whose favourite
/// alternative is the Condorcet winner.
inline VotingGame voting_to_game(const VotingModel& m) {
    check_voting(m);
    VotingGame out;
    const std::size_t N = m.voters.size();
    for (const auto& v : m.voters) {
        out.gamma1.push_back(v.gamma1());
        out.gamma2.push_back(v.gamma2());
    }
    std::vector<std::size_t> idx(N);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (out.gamma2[a] != out.gamma2[b]) return out.gamma2[a] < out.gamma2[b];
        return out.gamma1[a] < out.gamma1[b];
    });
    out.median = idx[N / 2];
    std::vector<double> g1 = out.gamma1;
    std::nth_element(g1.begin(), g1.begin() + static_cast<std::ptrdiff_t>(N / 2), g1.end());
    if (g1[N / 2] != out.gamma1[out.median])
        throw DomainError("voting: voter " + std::to_string(out.median) +
                          " is median at gamma_2 but not at gamma_1; the ordering assumption fails");
    out.spec = GameSpec{m.prior, {0.0, out.gamma1[out.median], out.gamma2[out.median], 1.0}, {0.0, m.v_ab, m.v_b}};
    require_valid(out.spec);
    return out;
}

struct VotingSweep {
    enum class Param { beta_b, alpha_b };
    Param param = Param::beta_b;
    std::vector<double> shifts;  // added to every voter's parameter
};

struct SweepRow {
    double parameter = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double payoff = 0.0;
    bool implementable = false;
    bool decrease = false;  // payoff fell although the parameter rose
};

inline std::vector<SweepRow> voting_comparative_statics(const VotingModel& m, const VotingSweep& sweep) {
    std::vector<SweepRow> rows;
    for (double s : sweep.shifts) {
        VotingModel mm = m;
        for (auto& v : mm.voters) (sweep.param == VotingSweep::Param::beta_b ? v.beta_b : v.alpha_b) += s;
        VotingGame vg = voting_to_game(mm);
        SweepRow row;
        row.parameter = s;
        row.gamma1 = vg.spec.gamma(1);
        row.gamma2 = vg.spec.gamma(2);
        OreResult ore = preferred_ore(vg.spec);
        row.payoff = ore.payoff;
        row.implementable = ore.coincides_with_commitment;
        if (!rows.empty() && s > rows.back().parameter && row.payoff < rows.back().payoff - 1e-9) row.decrease = true;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace disclosure
