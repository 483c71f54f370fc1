#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace greedyseq {

// One arc of the accumulated Bernoulli potential. Between two cyclically
// consecutive source points every fractional part {x - x_k} is affine in x,
// so the potential sum_k B2({x - x_k}) is a single quadratic
//   Q(x) = A x^2 + b x + c,   A = n,
// valid for lifted x in [lo, hi] (hi may exceed 1 on the wrap-around arc).
struct ArcQuad {
    double lo, hi;
    double A, b, c;

    double eval(double x) const { return (A * x + b) * x + c; }
    double vertex() const { return -b / (2.0 * A); }
    // antiderivative, for exact integration
    double primitive(double x) const { return ((A / 3.0 * x + b / 2.0) * x + c) * x; }
};

// Exact piecewise-quadratic representation of f_n(x) = sum_k B2({x - x_k})
// for the second Bernoulli polynomial B2(t) = t^2 - t + 1/6. Supports exact
// global argmin, sup norm, L1 norm and derivative L2 norm in O(n) per query.
class Bernoulli2Field {
public:
    explicit Bernoulli2Field(std::vector<double> sorted_points)
        : s_(std::move(sorted_points)) {
        if (s_.empty()) throw std::invalid_argument("Bernoulli2Field: need at least one point");
        if (!std::is_sorted(s_.begin(), s_.end()))
            throw std::invalid_argument("Bernoulli2Field: points must be sorted");
        sum_ = 0.0;
        sum_sq_ = 0.0;
        for (double v : s_) {
            sum_ += v;
            sum_sq_ += v * v;
        }
    }

    std::size_t size() const { return s_.size(); }
    const std::vector<double>& points() const { return s_; }

    // Visits the n arcs in cyclic order starting at the smallest point. The
    // last arc is lifted: hi = s[0] + 1.
    template <class F>
    void for_each_arc(F&& f) const {
        const std::size_t n = s_.size();
        const double dn = double(n);
        double prefix = 0.0; // sum_{j<=i} s_j
        for (std::size_t i = 0; i < n; ++i) {
            prefix += s_[i];
            // shifted source positions: a_j = s_j for j <= i, s_j - 1 for j > i
            double rest = double(n - 1 - i);
            double sum_a = sum_ - rest;
            double sum_a_sq = sum_sq_ - 2.0 * (sum_ - prefix) + rest;
            ArcQuad q;
            q.lo = s_[i];
            q.hi = (i + 1 < n) ? s_[i + 1] : s_[0] + 1.0;
            q.A = dn;
            q.b = -(2.0 * sum_a + dn);
            q.c = sum_a_sq + sum_a + dn / 6.0;
            f(q);
        }
    }

    // Direct evaluation (no arc machinery); used for gate residuals where the
    // coefficient form would lose a few digits to cancellation.
    double eval_direct(double x) const {
        double acc = 0.0;
        for (double p : s_) {
            double t = x - p;
            t -= std::floor(t);
            acc += (t - 1.0) * t + 1.0 / 6.0;
        }
        return acc;
    }

    struct Extremum {
        double location = 0.0; // reduced into [0,1)
        double value = 0.0;
    };

    // Exact global minimum. Candidates: each arc's clamped vertex and its left
    // endpoint. Values within tie_tol are treated as ties and broken toward
    // the smallest reduced coordinate.
    Extremum argmin(double tie_tol = 1e-12) const;

    double sup_norm() const;       // max |f_n| (exact)
    double l1_norm() const;        // integral of |f_n| (exact, root-split)
    double signed_integral() const; // integral of f_n; 0 up to rounding
    double deriv_l2() const;       // ||f_n'||_{L^2} (exact)

private:
    std::vector<double> s_;
    double sum_ = 0.0;
    double sum_sq_ = 0.0;
};

inline Bernoulli2Field::Extremum Bernoulli2Field::argmin(double tie_tol) const {
    double best_v = std::numeric_limits<double>::infinity();
    double best_x = 0.0;
    auto consider = [&](double x_lifted, double v) {
        double x = x_lifted - std::floor(x_lifted);
        if (v < best_v - tie_tol) {
            best_v = v;
            best_x = x;
        } else if (v < best_v + tie_tol) {
            if (x < best_x) best_x = x;
            best_v = std::min(best_v, v);
        }
    };
    for_each_arc([&](const ArcQuad& q) {
        consider(q.lo, q.eval(q.lo));
        double v = std::clamp(q.vertex(), q.lo, q.hi);
        consider(v, q.eval(v));
    });
    return {best_x, best_v};
}

inline double Bernoulli2Field::sup_norm() const {
    double m = 0.0;
    for_each_arc([&](const ArcQuad& q) {
        m = std::max(m, std::abs(q.eval(q.lo)));
        m = std::max(m, std::abs(q.eval(q.hi)));
        double v = q.vertex();
        if (v > q.lo && v < q.hi) m = std::max(m, std::abs(q.eval(v)));
    });
    return m;
}

inline double Bernoulli2Field::l1_norm() const {
    double total = 0.0;
    for_each_arc([&](const ArcQuad& q) {
        // split the arc at the real roots of Q, then |integral| per piece
        double cut[4];
        int nc = 0;
        cut[nc++] = q.lo;
        double disc = q.b * q.b - 4.0 * q.A * q.c;
        if (disc > 0.0) {
            double sq = std::sqrt(disc);
            double r1 = (-q.b - sq) / (2.0 * q.A);
            double r2 = (-q.b + sq) / (2.0 * q.A);
            if (r1 > q.lo && r1 < q.hi) cut[nc++] = r1;
            if (r2 > q.lo && r2 < q.hi) cut[nc++] = r2;
        }
        cut[nc++] = q.hi;
        for (int i = 0; i + 1 < nc; ++i)
            total += std::abs(q.primitive(cut[i + 1]) - q.primitive(cut[i]));
    });
    return total;
}

inline double Bernoulli2Field::signed_integral() const {
    double total = 0.0;
    for_each_arc([&](const ArcQuad& q) { total += q.primitive(q.hi) - q.primitive(q.lo); });
    return total;
}

inline double Bernoulli2Field::deriv_l2() const {
    // f_n' is linear on each arc: Q'(x) = 2A x + b, and
    // int (2A x + b)^2 dx = (2A x + b)^3 / (6A).
    double total = 0.0;
    for_each_arc([&](const ArcQuad& q) {
        double hi = 2.0 * q.A * q.hi + q.b;
        double lo = 2.0 * q.A * q.lo + q.b;
        total += (hi * hi * hi - lo * lo * lo) / (6.0 * q.A);
    });
    return std::sqrt(std::max(0.0, total));
}

} // namespace greedyseq
