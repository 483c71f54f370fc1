#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "greedyseq/diagnostics.hpp"
#include "greedyseq/kernel.hpp"
#include "greedyseq/pointset.hpp"
#include "greedyseq/sequence.hpp"

namespace greedyseq {

// --- generators ---------------------------------------------------------------

// A reproducible recipe for a point sequence; the JSON form doubles as the
// experiment-file and CLI format.
struct GeneratorSpec {
    std::string type = "greedy"; // greedy | kronecker | vdc | random | lattice | file

    // greedy
    std::string kernel = "bernoulli2"; // bernoulli2 | logsin | fourier | green
    nlohmann::json kernel_detail = nlohmann::json::object(); // fourier coeffs / green dim+cutoff
    std::vector<std::string> seed_literals;                  // e.g. {"1/3","4/5"}
    std::optional<SolverConfig> solver;                      // defaults per kernel/dim

    double alpha = 1.4142135623730951; // kronecker
    int base = 2;                      // vdc
    std::uint64_t rng_seed = 1;        // random
    int dim = 1;
    std::string path; // file

    static GeneratorSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    std::string label() const;

    bool is_green() const { return type == "greedy" && kernel == "green"; }
    std::optional<Kernel1D> kernel_1d() const;
    std::optional<KernelTd> kernel_td() const;
    std::vector<double> seed_values() const;
    SolverConfig resolved_solver() const;
};

// Produces the first n points of the recipe (for greedy: seed plus extensions;
// seed points count toward n).
PointSet generate(const GeneratorSpec& spec, int n, GreedyStats* stats = nullptr);

// Kernel1D factory from a JSON document:
//   {"type":"bernoulli2"} | {"type":"logsin"} | {"type":"fourier","coeffs":[[k,v],...],"cutoff":K}
Kernel1D kernel1d_from_json(const nlohmann::json& j);
// {"type":"green","dim":d,"cutoff":K}
KernelTd kernel_td_from_json(const nlohmann::json& j);

// --- growth-model fits ----------------------------------------------------------

// Least-squares fits of y(n). Pure-power models are fitted in log space,
// log/sqrt-log models in linear space.
struct GrowthFit {
    std::string model;          // c_log_n | c_pow_n | c_pow_n_fixed | c_sqrt_log_n_over_n
    double c = 0.0;
    double alpha = 0.0;         // exponent (fitted or fixed); 0 for non-power models
    double residual_rms = 0.0;  // in the fitted space
    int points_used = 0;
};

GrowthFit fit_growth(const std::string& model, const std::vector<double>& n,
                     const std::vector<double>& y,
                     std::optional<double> fixed_alpha = std::nullopt);

// --- scans ----------------------------------------------------------------------

struct FitRequest {
    std::string metric;
    std::string model;
    std::optional<double> alpha; // for c_pow_n_fixed
};

struct ScanSpec {
    std::string name = "scan";
    GeneratorSpec generator;
    std::vector<int> checkpoints; // strictly increasing
    std::vector<std::string> metrics;
    std::vector<FitRequest> fits;
    int spectral_window = -1;
    int norm_grid = 4096;
    // kernel for kernel-dependent metrics when the generator has none
    // (baselines analyzed against a reference kernel); JSON kernel document
    nlohmann::json analysis_kernel = nlohmann::json::object();

    std::optional<Kernel1D> resolved_kernel_1d() const;
    static ScanSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct ScanResult {
    std::vector<MetricReport> reports;       // one per checkpoint
    std::vector<GrowthFit> fits;             // one per fit request
    std::vector<double> wall_seconds;        // per checkpoint
    double max_gate_residual = 0.0;          // greedy generators only

    std::vector<double> column(const std::string& metric) const;
    nlohmann::json summary_json(const ScanSpec& spec) const;
};

ScanResult run_scan(const ScanSpec& spec);

// Writes <out_dir>/<metric>.csv per metric plus summary.json.
void write_scan_result(const std::filesystem::path& out_dir, const ScanSpec& spec,
                       const ScanResult& result);

// --- targeted studies -------------------------------------------------------------

// L1 norm of the running potential for every prefix 1..N (exact for the
// Bernoulli kernel).
std::vector<double> l1_norm_profile(const PointSet& run, const Kernel1D& kernel, int N,
                                    int norm_grid = 4096);

struct DoublingWindow {
    int lo = 0, hi = 0;     // window [lo, 2*lo] clipped to N
    int witness = 0;        // smallest m in the window with l1(m) <= bound (0 if none)
    double l1_at_witness = 0.0;
    bool ok = false;
};

struct DoublingWindowReport {
    double bound = 0.0; // 2 f(0) + tolerance
    std::vector<DoublingWindow> windows;
    bool all_ok = true;
};

// Verifies that every dyadic window [n, 2n] within [1, N] contains a prefix m
// whose potential L1 norm is at most 2 f(0) + tol.
DoublingWindowReport l1_doubling_windows(const PointSet& run, const Kernel1D& kernel, int N,
                                         double tol = 1e-3);

struct EnvelopePoint {
    int n = 0;
    double sup_norm = 0.0;
    double envelope = 0.0; // min_{m<=n} sup_norm(m)/m^{1/3}
};

struct EnvelopeReport {
    std::vector<EnvelopePoint> checkpoints;
    // at each L1-window witness m: sup(m), deriv(m), l1(m) and the
    // interpolation bound C * deriv^{2/3} * l1^{1/3}
    struct Witness {
        int m = 0;
        double sup = 0.0, deriv = 0.0, l1 = 0.0, bound = 0.0;
        bool ok = false;
    };
    std::vector<Witness> witnesses;
    bool all_ok = true;
};

// Lower envelope of sup_norm(m)/m^{1/3} over dyadic checkpoints, with the
// product bound sup <= C * ||f'||^{2/3} ||f||_1^{1/3} checked at every
// doubling-window witness. Requires a kernel with two-sided k^{-2} bounds.
EnvelopeReport sup_norm_envelope(const PointSet& run, const Kernel1D& kernel, int N,
                                 double gn_constant, double l1_tol = 1e-3);

// Empirical constant for ||g||_inf <= C ||g'||_2^{2/3} ||g||_1^{1/3} over
// mean-zero random trigonometric polynomials (several spectral decay
// profiles); deterministic in the seed.
double fit_gn_constant(std::uint64_t seed, int samples, int max_degree, int grid = 4096);

struct TdScalingRow {
    int n = 0;
    double proxy = 0.0;
    double normalized = 0.0; // proxy * n^{1/d} (d>=3) or proxy * sqrt(n/log n) (d=2)
    double gate_residual = 0.0;
    double offdiag_energy = 0.0;
};

struct TdScalingReport {
    int dim = 0;
    std::vector<TdScalingRow> rows;
    GrowthFit fit;
    bool gate_ok = true;       // every greedy step passed the nonpositivity gate
    bool offdiag_ok = true;    // sum_{k != l} G(x_k,x_l) <= n * eps at each checkpoint
};

// Greedy run on T^dim with the truncated Green kernel; spectral proxy at each
// checkpoint plus the gate and off-diagonal-energy assertions.
TdScalingReport td_proxy_scan(int dim, const KernelTd& kernel, int N,
                              const std::vector<int>& checkpoints, int grid_size = -1,
                              const PointSet* seed = nullptr);

// Sampled potential curves f_n on a uniform grid for each requested n, plus
// the (i/n, x_i) scatter table. Returns the written file paths.
std::vector<std::filesystem::path> figure_data(const PointSet& run, const Kernel1D& kernel,
                                               const std::vector<int>& n_list,
                                               const std::filesystem::path& out_dir,
                                               int curve_grid = 2048);

} // namespace greedyseq
