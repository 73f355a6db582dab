#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"

namespace disclosure::lp {

inline constexpr double inf = std::numeric_limits<double>::infinity();

/// maximize c'z  subject to  A z = b,  lo <= z <= hi.
struct Problem {
    Eigen::SparseMatrix<double> A;  // column major, m x n
    Eigen::VectorXd b, c, lo, hi;
};

struct Options {
    double feas_tol = 1e-9;
    double opt_tol = 1e-9;
    double pivot_tol = 1e-9;
    int refactor_every = 40;
    int degenerate_before_bland = 50;
    int max_iter = 0;  // 0: 50 * rows
};

struct Result {
    Eigen::VectorXd z;
    double objective = 0.0;
    std::vector<int> basis;
    int iterations = 0;
    int bland_iterations = 0;
};

/// Bounded-variable primal revised simplex started from a feasible basis.
/// Basis factors come from a sparse LU, refreshed every few pivots and
/// extended with product-form eta columns in between. Pricing is Dantzig's
/// rule; after a run of degenerate pivots it switches to Bland's rule until
/// the objective moves again.
class Simplex {
public:
    Simplex(const Problem& p, std::vector<int> basis, Options opt = {})
        : p_(p), opt_(opt), m_(static_cast<int>(p.A.rows())), n_(static_cast<int>(p.A.cols())), basis_(std::move(basis)) {
        if (static_cast<int>(basis_.size()) != m_) throw SolverError("simplex: basis size does not match row count");
        pos_.assign(n_, -1);
        for (int r = 0; r < m_; ++r) pos_[basis_[r]] = r;
        z_.resize(n_);
        for (int j = 0; j < n_; ++j) {
            if (pos_[j] >= 0) continue;
            if (std::isfinite(p_.lo[j])) z_[j] = p_.lo[j];
            else if (std::isfinite(p_.hi[j])) z_[j] = p_.hi[j];
            else z_[j] = 0.0;
        }
        refactor();
        for (int r = 0; r < m_; ++r) {
            int j = basis_[r];
            if (z_[j] < p_.lo[j] - opt_.feas_tol || z_[j] > p_.hi[j] + opt_.feas_tol)
                throw SolverError("simplex: initial basis is not primal feasible (variable " + std::to_string(j) +
                                  " = " + std::to_string(z_[j]) + ")");
        }
    }

    Result run() {
        int max_iter = opt_.max_iter > 0 ? opt_.max_iter : 50 * m_ + 100;
        int degenerate = 0;
        bool bland = false;
        Result res;
        for (int it = 0;; ++it) {
            if (it >= max_iter) throw SolverError("simplex: iteration limit reached");
            Eigen::VectorXd cb(m_);
            for (int r = 0; r < m_; ++r) cb[r] = p_.c[basis_[r]];
            Eigen::VectorXd y = btran(cb);

            int q = -1;
            double best = 0.0;
            int dir = 0;
            for (int j = 0; j < n_; ++j) {
                if (pos_[j] >= 0) continue;
                double d = p_.c[j];
                for (Eigen::SparseMatrix<double>::InnerIterator e(p_.A, j); e; ++e) d -= y[e.row()] * e.value();
                bool up = d > opt_.opt_tol && z_[j] < p_.hi[j];
                bool down = d < -opt_.opt_tol && z_[j] > p_.lo[j];
                if (!up && !down) continue;
                if (bland) {
                    q = j;
                    dir = up ? 1 : -1;
                    break;
                }
                if (std::abs(d) > best) {
                    best = std::abs(d);
                    q = j;
                    dir = up ? 1 : -1;
                }
            }
            if (q < 0) {
                res.iterations = it;
                break;
            }

            Eigen::VectorXd aq = Eigen::VectorXd::Zero(m_);
            for (Eigen::SparseMatrix<double>::InnerIterator e(p_.A, q); e; ++e) aq[e.row()] = e.value();
            Eigen::VectorXd delta = ftran(aq);

            // z_B(t) = z_B - dir * t * delta
            double tmax = p_.hi[q] - p_.lo[q];
            int leave = -1;
            double leave_piv = 0.0;
            for (int r = 0; r < m_; ++r) {
                double rate = -dir * delta[r];
                if (std::abs(rate) <= opt_.pivot_tol) continue;
                int j = basis_[r];
                double lim = rate < 0 ? (z_[j] - p_.lo[j]) / -rate : (p_.hi[j] - z_[j]) / rate;
                if (!std::isfinite(lim)) continue;
                lim = std::max(lim, 0.0);
                bool take = false;
                if (lim < tmax - 1e-12) take = true;
                else if (lim <= tmax + 1e-12 && leave >= 0) {
                    if (bland) take = j < basis_[leave];
                    else take = std::abs(rate) > leave_piv;
                }
                if (take) {
                    tmax = std::min(tmax, lim);
                    leave = r;
                    leave_piv = std::abs(rate);
                }
            }
            if (!std::isfinite(tmax)) throw SolverError("simplex: problem is unbounded");

            for (int r = 0; r < m_; ++r) z_[basis_[r]] -= dir * tmax * delta[r];
            z_[q] += dir * tmax;

            if (tmax <= 1e-12) {
                if (++degenerate >= opt_.degenerate_before_bland) bland = true;
            } else {
                degenerate = 0;
                bland = false;
            }
            if (bland) ++res.bland_iterations;

            if (leave < 0) continue;  // bound flip
            int out = basis_[leave];
            double rate = -dir * delta[leave];
            z_[out] = rate < 0 ? p_.lo[out] : p_.hi[out];
            pos_[out] = -1;
            basis_[leave] = q;
            pos_[q] = leave;
            etas_.push_back({leave, delta});
            if (static_cast<int>(etas_.size()) >= opt_.refactor_every) refactor();
        }
        refactor();
        res.z = z_;
        res.objective = p_.c.dot(z_);
        res.basis = basis_;
        return res;
    }

private:
    struct Eta {
        int r;
        Eigen::VectorXd d;
    };

    void refactor() {
        etas_.clear();
        std::vector<Eigen::Triplet<double>> t;
        for (int r = 0; r < m_; ++r)
            for (Eigen::SparseMatrix<double>::InnerIterator e(p_.A, basis_[r]); e; ++e)
                t.emplace_back(static_cast<int>(e.row()), r, e.value());
        Eigen::SparseMatrix<double> B(m_, m_);
        B.setFromTriplets(t.begin(), t.end());
        B.makeCompressed();
        lu_.analyzePattern(B);
        lu_.factorize(B);
        if (lu_.info() != Eigen::Success) throw SolverError("simplex: basis matrix is singular");
        // Primal values of the basic variables from scratch.
        Eigen::VectorXd rhs = p_.b;
        for (int j = 0; j < n_; ++j) {
            if (pos_[j] >= 0 || z_[j] == 0.0) continue;
            for (Eigen::SparseMatrix<double>::InnerIterator e(p_.A, j); e; ++e) rhs[e.row()] -= e.value() * z_[j];
        }
        Eigen::VectorXd zb = lu_.solve(rhs);
        // Badly scaled rows (very short grid steps) leave visible residuals;
        // a couple of refinement sweeps remove them.
        for (int sweep = 0; sweep < 2; ++sweep) {
            Eigen::VectorXd res = rhs;
            for (int r = 0; r < m_; ++r)
                for (Eigen::SparseMatrix<double>::InnerIterator e(p_.A, basis_[r]); e; ++e)
                    res[e.row()] -= e.value() * zb[r];
            zb += lu_.solve(res);
        }
        for (int r = 0; r < m_; ++r) z_[basis_[r]] = zb[r];
    }

    Eigen::VectorXd ftran(const Eigen::VectorXd& v) {
        Eigen::VectorXd x = lu_.solve(v);
        for (const auto& e : etas_) {
            double xr = x[e.r] / e.d[e.r];
            x -= xr * e.d;
            x[e.r] = xr;
        }
        return x;
    }

    Eigen::VectorXd btran(Eigen::VectorXd w) {
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            double s = w.dot(it->d) - w[it->r] * it->d[it->r];
            w[it->r] = (w[it->r] - s) / it->d[it->r];
        }
        return lu_.transpose().solve(w);
    }

    const Problem& p_;
    Options opt_;
    int m_, n_;
    std::vector<int> basis_;
    std::vector<int> pos_;
    Eigen::VectorXd z_;
    std::vector<Eta> etas_;
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
};

}  // namespace disclosure::lp
