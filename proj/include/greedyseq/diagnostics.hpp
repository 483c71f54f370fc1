#pragma once

#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "greedyseq/kernel.hpp"
#include "greedyseq/pointset.hpp"
#include "greedyseq/spectral.hpp"

namespace greedyseq {

// A diagnostic value together with an upper bound on what the truncated part
// of its defining series could still contribute. The bound applies to the
// squared quantity for the root-type metrics (diaphony, w2_proxy, deriv_l2)
// and is infinite where the worst-case tail diverges (log-sin energy tails,
// spectral proxies in d >= 2).
struct ValueWithTail {
    double value = 0.0;
    double tail_bound = 0.0;
};

// --- energies ---------------------------------------------------------------

// sum_{k,l} f(x_k - x_l). For the log-sin kernel the diagonal is excluded
// (f(0) is infinite) and the off-diagonal sum is returned.
double pair_energy(const PointSet& points, const Kernel1D& kernel);
// Diagonal included (the truncated kernel is finite at 0).
double pair_energy(const PointSet& points, const KernelTd& kernel);

// Energy through the exponential-sum identity: 2 sum_{k=1..K} h(k) |S_n(k)|^2,
// tail bound n^2 sum_{|k|>K} h(k).
ValueWithTail energy_spectral(const SpectralState& state, const Kernel1D& kernel);
ValueWithTail energy_spectral(const SpectralState& state, const KernelTd& kernel);

// --- potential-field norms --------------------------------------------------

// max over a uniform grid plus the source points of |f_n|; exact for the
// Bernoulli kernel via per-arc quadratic extrema (grid ignored).
double potential_sup_norm(const PointSet& points, const Kernel1D& kernel, int grid);

struct QuadratureValue {
    double value = 0.0;
    double error_estimate = 0.0; // 0 when the integration is exact
};

// integral of |f_n|; exact piecewise integration with root splitting for the
// Bernoulli kernel, trapezoidal rule with a coarse/fine error estimate else.
QuadratureValue potential_l1_norm(const PointSet& points, const Kernel1D& kernel, int grid);

// signed integral of f_n (0 up to rounding/quadrature; mean-zero check).
QuadratureValue potential_mean(const PointSet& points, const Kernel1D& kernel, int grid);

// ||f_n'||_{L2} through the spectral identity
// ( sum_{0<|k|<=K} 4 pi^2 k^2 h(k)^2 |S_n(k)|^2 )^{1/2}, with tail bound.
ValueWithTail potential_deriv_l2(const SpectralState& state, const Kernel1D& kernel);
// Exact route for the Bernoulli kernel (f_n' is piecewise linear).
double potential_deriv_l2_exact(const PointSet& points);

// --- uniformity functionals -------------------------------------------------

// max over 1 <= k <= K of [ |S_n(k)|/n ] / [ sqrt(f(0)/h(k)) / sqrt(n) ].
// <= 1 (up to the gate epsilon) for greedy sequences.
double weyl_ratio(const SpectralState& state, const Kernel1D& kernel);

// ( 2 sum_{k=1..K} |S_n(k)/n|^2 / k^2 )^{1/2}; tail bound 2/K on the square.
ValueWithTail diaphony(const SpectralState& state);

// Exact anchored star discrepancy (d = 1) by the sorted-order formula.
double star_discrepancy(const PointSet& points);

// Wrap-around extreme discrepancy: sup over all arcs (anchoring dropped) of
// the counting error, via the O(n^2) pair scan over point-bounded arcs.
double extreme_discrepancy(const PointSet& points);

// | #{x_i in J}/n - |J| | for the wrap-capable interval J = [left, left+len).
double interval_count_error(const PointSet& points, double left, double length);

// ( sum_{0<|k|_inf<=K} |S_n(k)/n|^2 / |k|^2 )^{1/2} over the window, both
// conjugate halves counted. Coincides with diaphony in d = 1 (it is sqrt(2)
// times the positive-frequency-only H^{-1} sum). Tail bound on the square:
// 2/K in d = 1, infinite in d >= 2 where the empirical measure has no
// decaying tail.
ValueWithTail w2_proxy(const SpectralState& state);

// --- circular Wasserstein distances ------------------------------------------

// Exact W_2 between the empirical measure of the points and Lebesgue measure
// on the circle. Monotone transport with a rotation offset: cost(t) is
// piecewise quadratic in the offset with O(n) breakpoints; every piece vertex
// and endpoint is evaluated exactly.
double w2_circle_exact(const PointSet& points);
// Same scan with |.| cost.
double w1_circle_exact(const PointSet& points);

// --- per-checkpoint report ----------------------------------------------------

struct MetricReport {
    std::size_t n = 0;
    // metric name -> (value, tail bound); tail is NaN where not applicable
    std::map<std::string, ValueWithTail> values;

    void set(const std::string& name, double v,
             double tail = std::numeric_limits<double>::quiet_NaN()) {
        values[name] = {v, tail};
    }
    bool has(const std::string& name) const { return values.count(name) != 0; }
    double value(const std::string& name) const { return values.at(name).value; }
    double tail(const std::string& name) const { return values.at(name).tail_bound; }
};

// Metric names understood by the sweep engine.
const std::vector<std::string>& known_metrics();

struct SweepConfig {
    std::vector<std::string> metrics;
    int spectral_window = -1; // <0: 10^4 in 1D, 32 on T^2, 16 on T^3+
    int norm_grid = 4096;     // grid for non-exact norm evaluation
    int resolved_window(int dim) const;
};

// Incremental evaluator: absorb points one by one, snapshot metrics at
// checkpoints. Values agree with a from-scratch evaluation of the prefix.
class DiagnosticSweep {
public:
    DiagnosticSweep(int dim, SweepConfig cfg,
                    std::optional<Kernel1D> kernel = std::nullopt,
                    std::optional<KernelTd> kernel_td = std::nullopt);

    void absorb(std::span<const double> p);
    void absorb(const PointSet& ps);
    std::size_t n() const { return prefix_.size(); }

    MetricReport report() const;

private:
    bool wants(const std::string& m) const;

    SweepConfig cfg_;
    int dim_;
    std::optional<Kernel1D> kernel_;
    std::optional<KernelTd> kernel_td_;
    std::optional<SpectralState> state_;
    PointSet prefix_;
    double energy_ = 0.0; // running pair energy
    bool need_energy_ = false;
    bool need_spectral_ = false;
};

} // namespace greedyseq
