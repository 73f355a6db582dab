#pragma once

#include <algorithm>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace disclosure {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool degenerate() const { return hi <= lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of closed subintervals of [0,1], kept sorted with
/// overlapping or touching pieces merged. Degenerate pieces survive
/// normalization unless they touch a neighbour.
class IntervalUnion {
public:
    IntervalUnion() = default;
    IntervalUnion(std::initializer_list<Interval> pieces) : pieces_(pieces) { normalize(); }
    explicit IntervalUnion(std::vector<Interval> pieces) : pieces_(std::move(pieces)) { normalize(); }

    static IntervalUnion point(double x) { return IntervalUnion{{x, x}}; }

    const std::vector<Interval>& pieces() const& { return pieces_; }
    std::vector<Interval> pieces() && { return std::move(pieces_); }
    bool empty() const { return pieces_.empty(); }
    std::size_t size() const { return pieces_.size(); }

    double inf() const { return pieces_.empty() ? 0.0 : pieces_.front().lo; }
    double sup() const { return pieces_.empty() ? 0.0 : pieces_.back().hi; }
    Interval hull() const { return {inf(), sup()}; }

    /// Lebesgue measure.
    double length() const {
        double s = 0.0;
        for (const auto& p : pieces_) s += p.length();
        return s;
    }

    bool contains(double x) const {
        return std::any_of(pieces_.begin(), pieces_.end(), [x](const Interval& p) { return p.contains(x); });
    }

    IntervalUnion unite(const IntervalUnion& other) const {
        std::vector<Interval> all = pieces_;
        all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
        return IntervalUnion(std::move(all));
    }

    IntervalUnion intersect(const IntervalUnion& other) const {
        std::vector<Interval> out;
        std::size_t i = 0, j = 0;
        while (i < pieces_.size() && j < other.pieces_.size()) {
            const Interval& a = pieces_[i];
            const Interval& b = other.pieces_[j];
            double lo = std::max(a.lo, b.lo);
            double hi = std::min(a.hi, b.hi);
            if (lo <= hi) out.push_back({lo, hi});
            if (a.hi < b.hi) ++i; else ++j;
        }
        return IntervalUnion(std::move(out));
    }

    /// Closure of this \ other. Pieces of zero length produced by the
    /// cut are discarded, so the result differs from the exact closure
    /// only on a null set.
    IntervalUnion subtract(const IntervalUnion& other) const {
        std::vector<Interval> out;
        for (const auto& a : pieces_) {
            std::vector<Interval> rest{a};
            for (const auto& b : other.pieces_) {
                if (b.degenerate()) continue;
                std::vector<Interval> next;
                for (const auto& r : rest) {
                    if (b.hi <= r.lo || b.lo >= r.hi) {
                        next.push_back(r);
                        continue;
                    }
                    if (r.lo < b.lo) next.push_back({r.lo, b.lo});
                    if (b.hi < r.hi) next.push_back({b.hi, r.hi});
                }
                rest = std::move(next);
            }
            for (const auto& r : rest)
                if (!r.degenerate() || a.degenerate()) out.push_back(r);
        }
        return IntervalUnion(std::move(out));
    }

    /// Drop pieces shorter than tol.
    IntervalUnion prune(double tol) const {
        std::vector<Interval> out;
        for (const auto& p : pieces_)
            if (p.length() >= tol) out.push_back(p);
        return IntervalUnion(std::move(out));
    }

    std::string str() const {
        std::ostringstream os;
        os << '{';
        for (std::size_t k = 0; k < pieces_.size(); ++k) {
            if (k) os << ", ";
            os << '[' << pieces_[k].lo << ", " << pieces_[k].hi << ']';
        }
        os << '}';
        return os.str();
    }

    friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

private:
    void normalize() {
        for (const auto& p : pieces_)
            if (!(p.lo <= p.hi) || p.lo < 0.0 || p.hi > 1.0)
                throw DomainError("interval [" + std::to_string(p.lo) + ", " + std::to_string(p.hi) +
                                  "] is not a closed subinterval of [0,1]");
        std::sort(pieces_.begin(), pieces_.end(),
                  [](const Interval& a, const Interval& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
        std::vector<Interval> merged;
        for (const auto& p : pieces_) {
            if (!merged.empty() && merged.back().hi >= p.lo)
                merged.back().hi = std::max(merged.back().hi, p.hi);
            else
                merged.push_back(p);
        }
        pieces_ = std::move(merged);
    }

    std::vector<Interval> pieces_;
};

}  // namespace disclosure
