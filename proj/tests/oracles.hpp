// Test-only oracles, independent of the library implementations they check:
// plain quadrature, dense-grid searches, brute-force scans and small exact
// solvers. Everything here trades speed for being obviously correct.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracles {

inline constexpr double kPi = std::numbers::pi;

// Midpoint rule over [a, b].
inline double integrate_midpoint(const std::function<double(double)>& f, double a, double b,
                                 int panels) {
    double h = (b - a) / double(panels);
    double s = 0.0;
    for (int j = 0; j < panels; ++j) s += f(a + (double(j) + 0.5) * h);
    return s * h;
}

// Composite Simpson over [a, b]; panels must be even. Exact for cubics, so the
// Bernoulli kernel integrates to machine zero.
inline double integrate_simpson(const std::function<double(double)>& f, double a, double b,
                                int panels) {
    double h = (b - a) / double(panels);
    double s = f(a) + f(b);
    for (int j = 1; j < panels; ++j) s += f(a + double(j) * h) * (j % 2 == 1 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Midpoint rule on a mesh graded dyadically toward `a` (for integrands with a
// log singularity at a).
inline double integrate_graded(const std::function<double(double)>& f, double a, double b,
                               int levels, int panels_per_level) {
    double total = 0.0;
    double hi = b;
    for (int j = 0; j < levels; ++j) {
        double lo = a + (b - a) * std::pow(0.5, j + 1);
        total += integrate_midpoint(f, lo, hi, panels_per_level);
        hi = lo;
    }
    return total; // the [a, a + (b-a) 2^-levels] stub is the caller's business
}

// Trapezoid-rule Fourier cosine integral 2 int_0^1 f(x) cos(2 pi k x) dx / 2
// for a bounded periodic f (nodes at j/panels, periodic wrap).
inline double fourier_coeff_trapezoid(const std::function<double(double)>& f, int k,
                                      int panels) {
    double s = 0.0;
    for (int j = 0; j < panels; ++j) {
        double x = double(j) / double(panels);
        s += f(x) * std::cos(2.0 * kPi * double(k) * x);
    }
    return s / double(panels);
}

// Singularity-adapted cosine integral for f with log singularities at 0 and 1,
// symmetric about 1/2: 2 * graded integral over (0, 1/2].
inline double fourier_coeff_logsingular(const std::function<double(double)>& f, int k) {
    auto g = [&](double x) { return f(x) * std::cos(2.0 * kPi * double(k) * x); };
    // remaining stub [0, 0.5*2^-45]: f ~ -log(2 pi x), integral ~ 1e-13
    return 2.0 * integrate_graded(g, 0.0, 0.5, 45, 1024);
}

// Dense-grid argmin of a 1D potential sum (direct summation, no arc
// decomposition).
struct GridMin {
    double location = 0.0;
    double value = 0.0;
};
inline GridMin grid_argmin(const std::vector<double>& points,
                           const std::function<double(double)>& kernel_eval, int grid) {
    GridMin best;
    best.value = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid; ++j) {
        double x = double(j) / double(grid);
        double v = 0.0;
        for (double p : points) v += kernel_eval(x - p);
        if (v < best.value) {
            best.value = v;
            best.location = x;
        }
    }
    return best;
}

// O(n^2) anchored-interval scan: the sup over [0,t) boxes is attained at jumps.
inline double brute_star_discrepancy(std::vector<double> pts) {
    std::sort(pts.begin(), pts.end());
    double n = double(pts.size());
    double d = 0.0;
    for (double t : pts) {
        double below = 0.0, at_or_below = 0.0;
        for (double x : pts) {
            if (x < t) below += 1.0;
            if (x <= t) at_or_below += 1.0;
        }
        d = std::max(d, std::abs(below / n - t));
        d = std::max(d, std::abs(at_or_below / n - t));
    }
    d = std::max(d, 1.0 - pts.back()); // boxes approaching [0,1)
    return d;
}

// Direct arc scan for the wrap-around (extreme) discrepancy: every arc with
// boundaries nudged just inside/outside each sample point, counts taken by a
// plain loop.
inline double brute_extreme_discrepancy(const std::vector<double>& pts) {
    const double n = double(pts.size());
    const double delta = 1e-9;
    double d = 0.0;
    auto count_in = [&](double left, double len) {
        int c = 0;
        for (double x : pts) {
            double rel = x - left;
            rel -= std::floor(rel);
            if (rel < len) ++c;
        }
        return double(c);
    };
    for (double a : pts) {
        for (double b : pts) {
            for (double la : {a - delta, a + delta}) {
                double base = b - la;
                base -= std::floor(base);
                for (double len : {base - delta, base + delta}) {
                    if (len <= 0.0 || len >= 1.0) continue;
                    d = std::max(d, std::abs(count_in(la, len) / n - len));
                }
            }
        }
    }
    // near-full-circle arcs that exclude a single point
    for (double a : pts) {
        double len = 1.0 - 2.0 * delta;
        d = std::max(d, std::abs(count_in(a + delta, len) / n - len));
    }
    return d;
}

inline double circle_dist(double x, double y) {
    double d = std::abs(x - y);
    d -= std::floor(d);
    return d <= 0.5 ? d : 1.0 - d;
}

// Brute-force cyclic-assignment transport: Lebesgue measure discretized into M
// quantile atoms, blocks of M/n consecutive atoms assigned to the sorted
// points, every cyclic offset tried. M must be divisible by n.
inline double w2_cyclic_assignment(std::vector<double> pts, int m_atoms = 600) {
    std::sort(pts.begin(), pts.end());
    int n = int(pts.size());
    int block = m_atoms / n;
    std::vector<double> atoms(m_atoms);
    for (int j = 0; j < m_atoms; ++j) atoms[j] = (2.0 * j + 1.0) / (2.0 * m_atoms);
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < m_atoms; ++r) {
        double cost = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int b = 0; b < block; ++b) {
                double u = atoms[std::size_t((r + i * block + b) % m_atoms)];
                double d = circle_dist(pts[std::size_t(i)], u);
                cost += d * d;
            }
        }
        best = std::min(best, cost / double(m_atoms));
    }
    return std::sqrt(best);
}

// Direct double-sum energy (no incremental update).
inline double double_sum_energy(const std::vector<double>& pts,
                                const std::function<double(double)>& kernel_eval,
                                bool include_diagonal) {
    double e = 0.0;
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = 0; b < pts.size(); ++b) {
            if (!include_diagonal && a == b) continue;
            e += kernel_eval(pts[a] - pts[b]);
        }
    return e;
}

// Direct exponential sum, no recurrences.
inline std::complex<double> exp_sum(const std::vector<double>& pts, int k) {
    std::complex<double> s(0.0, 0.0);
    for (double x : pts)
        s += std::complex<double>(std::cos(2.0 * kPi * k * x), -std::sin(2.0 * kPi * k * x));
    return s;
}

// Full-window lattice sum for the truncated Green kernel on T^d, written as an
// explicit odometer over all nonzero integer vectors with |k|_inf <= K.
inline double green_lattice_sum(const std::vector<double>& x, int K) {
    int d = int(x.size());
    std::vector<int> k(std::size_t(d), -K);
    double total = 0.0;
    while (true) {
        double k2 = 0.0, phase = 0.0;
        for (int a = 0; a < d; ++a) {
            k2 += double(k[std::size_t(a)]) * double(k[std::size_t(a)]);
            phase += double(k[std::size_t(a)]) * x[std::size_t(a)];
        }
        if (k2 > 0.0) total += std::cos(2.0 * kPi * phase) / (4.0 * kPi * kPi * k2);
        int a = d - 1;
        while (a >= 0 && k[std::size_t(a)] == K) {
            k[std::size_t(a)] = -K;
            --a;
        }
        if (a < 0) break;
        ++k[std::size_t(a)];
    }
    return total;
}

} // namespace oracles
