#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace greedyseq {

// All coordinates live on the unit torus [0,1)^d with wrap-around arithmetic.

// Reduce a real number into [0,1). wrap01(-0.25) == 0.75, wrap01(1.0) == 0.0.
inline double wrap01(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r = 0.0; // floor rounding can land exactly on 1 for tiny negative x
    return r;
}

// Signed difference x - y folded into [-1/2, 1/2).
inline double torus_diff(double x, double y) {
    double d = wrap01(x - y);
    return d < 0.5 ? d : d - 1.0;
}

// Intrinsic circle distance, in [0, 1/2].
inline double torus_dist(double x, double y) {
    double d = wrap01(x - y);
    return d <= 0.5 ? d : 1.0 - d;
}

inline double torus_dist_sq_vec(const double* a, const double* b, std::size_t d) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        double t = torus_dist(a[i], b[i]);
        s += t * t;
    }
    return s;
}

inline void wrap01_vec(std::vector<double>& v) {
    for (double& x : v) x = wrap01(x);
}

} // namespace greedyseq
