#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace greedyseq {

// Thrown when a kernel is evaluated at its singularity (log-sin kernel at 0).
class SingularEvalError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class Kernel1DKind {
    Bernoulli2,      // x^2 - x + 1/6 on [0,1); coefficients 1/(2 pi^2 k^2)
    LogSin,          // -log(2 sin(pi x)); coefficients 1/(2|k|); unbounded at 0
    ExplicitFourier, // user-supplied positive coefficients, truncated cosine series
};

struct AdmissibilityReport {
    bool satisfied = false;  // h(k) >= c k^{-2} held for every checked k
    double certified_c = 0;  // largest c certified over the checked range
    int first_violation = 0; // smallest violating k (0 if none)
    int k_checked = 0;
};

// Even, mean-zero kernel on the circle, represented by a closed form and/or
// Fourier cosine coefficients. Coefficients are stored for positive k only;
// negative frequencies are resolved through evenness. Immutable after
// construction, safe for concurrent reads.
class Kernel1D {
public:
    static Kernel1D bernoulli2();
    static Kernel1D log_sin();
    // coeffs maps positive frequency k -> h(k) > 0; cutoff bounds evaluation.
    static Kernel1D explicit_fourier(std::map<int, double> coeffs, int cutoff);

    Kernel1DKind kind() const { return kind_; }
    std::string name() const;
    int cutoff() const { return cutoff_; }

    // f({x}); throws SingularEvalError for the log-sin kernel at x == 0.
    double eval(double x) const;

    // Fourier coefficient h(k), k != 0; h(-k) == h(k).
    // Throws std::invalid_argument at k == 0 (mean-value frequency, 0 by convention).
    double fourier_coefficient(int k) const;

    // f(0) = sum of all coefficients. Infinite for the log-sin kernel.
    bool finite_at_zero() const { return kind_ != Kernel1DKind::LogSin; }
    double value_at_zero() const;

    // Upper bound on sum_{|k|>K} h(k) (both signs); the error committed when the
    // series is truncated at K. Infinite for the log-sin kernel.
    double truncation_tail(int K) const;

    // Checks h(k) >= c k^{-2} for 1 <= k <= k_max and records the largest
    // certified constant. Sets the satisfies_c_over_k2 flag on success.
    AdmissibilityReport verify_admissibility(double c, int k_max) const;

    bool satisfies_c_over_k2() const { return quant_bound_.has_value(); }
    double certified_c() const { return quant_bound_.value_or(0.0); }

    // Whether c1 k^{-2} <= h(k) <= c2 k^{-2} holds with explicit constants
    // (true for the Bernoulli kernel, false for log-sin whose coefficients
    // decay only like 1/k).
    bool two_sided_k2() const;

private:
    Kernel1D() = default;

    Kernel1DKind kind_ = Kernel1DKind::Bernoulli2;
    std::map<int, double> coeffs_; // ExplicitFourier only, positive k
    int cutoff_ = 0;
    mutable std::optional<double> quant_bound_; // certified c, once verified
};

// Spectrally truncated translation-invariant kernel on the torus T^d, d >= 2:
//   G_K(x) = sum_{0 < |k|_inf <= K} a_k e^{2 pi i k.x} / (4 pi^2 |k|^2),
// real by conjugate symmetry. a_k == 1 gives the (truncated) Green kernel of
// the Laplacian. Coefficients must obey a two-sided bound c1 < a_k < c2.
class KernelTd {
public:
    // Green kernel: a_k = 1 for every nonzero frequency.
    static KernelTd green(int dim, int cutoff);

    int dim() const { return dim_; }
    int cutoff() const { return cutoff_; }
    double c1() const { return c1_; }
    double c2() const { return c2_; }
    std::string name() const { return "green"; }

    // Coefficient a_k for a nonzero lattice vector (constant for Green).
    double coefficient(const std::vector<int>& k) const;

    // Direct lattice-sum evaluation at a difference vector x in [0,1)^d.
    // O((2K+1)^d); intended for point queries, not bulk grids.
    double eval(const std::vector<double>& x) const;

    // G_K(0) = sum of a_k/(4 pi^2 |k|^2) over the window; finite.
    double value_at_zero() const;

private:
    KernelTd() = default;

    int dim_ = 2;
    int cutoff_ = 1;
    double c1_ = 0.5, c2_ = 2.0;
};

} // namespace greedyseq
