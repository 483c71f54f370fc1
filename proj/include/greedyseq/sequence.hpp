#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "greedyseq/kernel.hpp"
#include "greedyseq/pointset.hpp"

namespace greedyseq {

// Raised when no candidate passes the nonpositivity gate (grid too coarse).
class GateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SolverMode {
    ExactPiecewise, // Bernoulli2, d = 1: global quadratic argmin per arc
    GridRefine,     // d = 1: grid scan + bracket refinement
    Grid,           // d >= 2: pure grid scan
};

std::string to_string(SolverMode m);
SolverMode solver_mode_from_string(const std::string& s);

struct SolverConfig {
    SolverMode mode = SolverMode::ExactPiecewise;
    int grid_size = 4096;      // candidates per axis (grid modes)
    double refine_tol = 1e-12; // 1D bracket width target
    // NaN: per-mode default (1e-9 exact, 1e-6 grid)
    double gate_eps = std::numeric_limits<double>::quiet_NaN();

    double resolved_gate_eps() const {
        if (!std::isnan(gate_eps)) return gate_eps;
        return mode == SolverMode::ExactPiecewise ? 1e-9 : 1e-6;
    }

    static SolverConfig exact() { return {}; }
    static SolverConfig grid_1d(int m = 4096) {
        SolverConfig c;
        c.mode = SolverMode::GridRefine;
        c.grid_size = m;
        return c;
    }
    static SolverConfig grid_td(int dim, int m = -1) {
        SolverConfig c;
        c.mode = SolverMode::Grid;
        c.grid_size = m > 0 ? m : (dim <= 2 ? 256 : 64);
        return c;
    }
};

struct GreedyStats {
    std::vector<double> gate_residuals; // potential value at each appended point
    double max_gate_residual() const;
};

// Appends `steps` greedy minimizers of the running potential to `points`.
// Ties are broken toward the smallest (lexicographically smallest) reduced
// coordinate. Every appended point must pass the nonpositivity gate
// sum_{k<n} f(x_n - x_k) <= gate_eps, else GateError is thrown.
PointSet greedy_extend(const PointSet& points, const Kernel1D& kernel,
                       const SolverConfig& config, int steps,
                       GreedyStats* stats = nullptr);
PointSet greedy_extend(const PointSet& points, const KernelTd& kernel,
                       const SolverConfig& config, int steps,
                       GreedyStats* stats = nullptr);

struct ArgminResult {
    double location = 0.0; // in [0,1)
    double value = 0.0;
};

// Exact global minimizer of sum_k B2({x - x_k}) for the second Bernoulli
// polynomial, via per-arc vertex evaluation. Input need not be sorted.
ArgminResult exact_bernoulli_argmin(std::vector<double> points);

// Classical baselines -------------------------------------------------------

// x_m = {m alpha}, m = 1..n.
PointSet kronecker(double alpha, int n);

// x_m = radical inverse of m in the given base, m = 1..n.
PointSet van_der_corput(int base, int n);
double radical_inverse(std::uint64_t m, int base);

// n i.i.d.-uniform points from mt19937_64; each coordinate is
// (next_output >> 11) * 2^-53, so streams are reproducible across platforms.
PointSet random_points(std::uint64_t seed, int n, int d);

// Midpoint lattice {(2i-1)/(2n)}, the canonical equispaced reference set.
PointSet midpoint_lattice(int n);

} // namespace greedyseq
