#include "greedyseq/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "greedyseq/bernoulli_field.hpp"
#include "greedyseq/torus.hpp"

namespace greedyseq {

namespace {

constexpr double kPi = std::numbers::pi;

double safe_eval(const Kernel1D& k, double x) {
    try {
        return k.eval(x);
    } catch (const SingularEvalError&) {
        return std::numeric_limits<double>::infinity();
    }
}

std::vector<double> sorted_coords(const PointSet& p) {
    std::vector<double> s(p.raw());
    std::sort(s.begin(), s.end());
    return s;
}

// sum_{|k|>K} 4 pi^2 k^2 h(k)^2, the truncated weight of the derivative series.
double deriv_weight_tail(const Kernel1D& kernel, int K) {
    switch (kernel.kind()) {
        case Kernel1DKind::Bernoulli2:
            // 4 pi^2 k^2 / (2 pi^2 k^2)^2 = 1/(pi^2 k^2); both signs
            return K == 0 ? 1.0 / 3.0 : 2.0 / (kPi * kPi * double(K));
        case Kernel1DKind::LogSin:
            // 4 pi^2 k^2 (1/2k)^2 = pi^2 per frequency: divergent
            return std::numeric_limits<double>::infinity();
        case Kernel1DKind::ExplicitFourier: {
            double s = 0.0;
            for (int k = K + 1; k <= kernel.cutoff(); ++k) {
                double h = kernel.fourier_coefficient(k);
                s += 2.0 * 4.0 * kPi * kPi * double(k) * double(k) * h * h;
            }
            return s;
        }
    }
    return 0.0;
}

// --- circular transport scan -------------------------------------------------
//
// For sorted atoms y_0..y_{n-1} and offset t, the monotone coupling sends y_i
// to the arc [t + i/n, t + (i+1)/n). Its cost as a function of t is piecewise
// quadratic; branch changes happen when an arc endpoint crosses a source point
// or its antipode. The scan evaluates the cost exactly at every breakpoint and
// at each piece's fitted interior vertex.

double circ_primitive(double w, int p) {
    // int_0^w d(0,v)^p dv for w in [0,1]
    if (p == 2) {
        if (w <= 0.5) return w * w * w / 3.0;
        double u = 1.0 - w;
        return 1.0 / 12.0 - u * u * u / 3.0;
    }
    if (w <= 0.5) return 0.5 * w * w;
    double u = 1.0 - w;
    return 0.25 - 0.5 * u * u;
}

double transport_cost(const std::vector<double>& y, double t, int p) {
    const std::size_t n = y.size();
    const double inv = 1.0 / double(n);
    const double full = (p == 2) ? 1.0 / 12.0 : 0.25;
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double a = t + double(i) * inv - y[i];
        double b = a + inv;
        // shift the window near 0 before differencing the primitive
        double shift = std::floor(a);
        a -= shift;
        b -= shift;
        double pa = circ_primitive(a, p);
        double pb = b <= 1.0 ? circ_primitive(b, p) : full + circ_primitive(b - 1.0, p);
        c += pb - pa;
    }
    return c;
}

double wp_circle(const PointSet& points, int p) {
    if (points.dim() != 1) throw std::invalid_argument("wp_circle: d = 1 only");
    if (points.empty()) throw std::invalid_argument("wp_circle: empty point set");
    std::vector<double> y = sorted_coords(points);
    const std::size_t n = y.size();
    const double inv = 1.0 / double(n);

    std::vector<double> brk;
    brk.reserve(4 * n);
    for (std::size_t i = 0; i < n; ++i) {
        double base = y[i] - double(i) * inv;
        brk.push_back(wrap01(base));
        brk.push_back(wrap01(base + 0.5));
        brk.push_back(wrap01(base - inv));
        brk.push_back(wrap01(base - inv + 0.5));
    }
    std::sort(brk.begin(), brk.end());
    brk.erase(std::unique(brk.begin(), brk.end()), brk.end());

    double best = std::numeric_limits<double>::infinity();
    auto consider = [&](double t) { best = std::min(best, transport_cost(y, t, p)); };

    const std::size_t B = brk.size();
    for (std::size_t j = 0; j < B; ++j) {
        double ta = brk[j];
        double tb = (j + 1 < B) ? brk[j + 1] : brk[0] + 1.0;
        double h = tb - ta;
        double ca = transport_cost(y, ta, p);
        best = std::min(best, ca);
        if (h <= 0.0) continue;
        double tm = ta + 0.5 * h;
        double cb = transport_cost(y, tb, p);
        double cm = transport_cost(y, tm, p);
        best = std::min(best, std::min(cb, cm));
        // quadratic through the three samples; interior vertex if convex
        double alpha = 2.0 * (ca + cb - 2.0 * cm) / (h * h);
        if (alpha > 0.0) {
            double beta = (cb - ca) / h;
            double tv = tm - beta / (2.0 * alpha);
            if (tv > ta && tv < tb) consider(tv);
        }
    }
    best = std::max(0.0, best);
    return p == 2 ? std::sqrt(best) : best;
}

} // namespace

// --- energies ---------------------------------------------------------------

double pair_energy(const PointSet& points, const Kernel1D& kernel) {
    const std::size_t n = points.size();
    const bool diagonal = kernel.finite_at_zero();
    double e = diagonal ? double(n) * kernel.value_at_zero() : 0.0;
    for (std::size_t m = 1; m < n; ++m) {
        double xm = points.coord(m);
        double row = 0.0;
        for (std::size_t k = 0; k < m; ++k) row += safe_eval(kernel, xm - points.coord(k));
        e += 2.0 * row;
    }
    return e;
}

double pair_energy(const PointSet& points, const KernelTd& kernel) {
    const std::size_t n = points.size();
    if (int(points.dim()) != kernel.dim())
        throw std::invalid_argument("pair_energy: dimension mismatch");
    double e = double(n) * kernel.value_at_zero();
    std::vector<double> diff(points.dim());
    for (std::size_t m = 1; m < n; ++m) {
        auto xm = points.point(m);
        double row = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            auto xk = points.point(k);
            for (std::size_t a = 0; a < points.dim(); ++a) diff[a] = xm[a] - xk[a];
            wrap01_vec(diff);
            row += kernel.eval(diff);
        }
        e += 2.0 * row;
    }
    return e;
}

ValueWithTail energy_spectral(const SpectralState& state, const Kernel1D& kernel) {
    if (state.dim() != 1) throw std::invalid_argument("energy_spectral: 1D state required");
    double e = 0.0;
    for (int k = 1; k <= state.k_max(); ++k)
        e += 2.0 * kernel.fourier_coefficient(k) * std::norm(state.sum1d(k));
    double nn = double(state.n());
    return {e, nn * nn * kernel.truncation_tail(state.k_max())};
}

ValueWithTail energy_spectral(const SpectralState& state, const KernelTd& kernel) {
    if (state.dim() != kernel.dim()) throw std::invalid_argument("energy_spectral: dimension mismatch");
    double e = 0.0;
    const auto& freqs = state.freqs();
    const auto& sums = state.sums();
    const auto& k2 = state.freq_norm_sq();
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        int linf = 0;
        for (int c : freqs[i]) linf = std::max(linf, std::abs(c));
        if (linf > kernel.cutoff()) continue; // kernel has no such frequency
        e += 2.0 * kernel.coefficient(freqs[i]) / (4.0 * kPi * kPi * k2[i]) * std::norm(sums[i]);
    }
    // exact when the window covers the kernel cutoff: the kernel is a finite
    // trigonometric sum
    double tail = state.k_max() >= kernel.cutoff()
                      ? 0.0
                      : std::numeric_limits<double>::infinity();
    return {e, tail};
}

// --- potential-field norms ----------------------------------------------------

double potential_sup_norm(const PointSet& points, const Kernel1D& kernel, int grid) {
    if (points.dim() != 1) throw std::invalid_argument("potential_sup_norm: d = 1 only");
    if (grid < 2) throw std::invalid_argument("potential_sup_norm: grid must be >= 2");
    if (kernel.kind() == Kernel1DKind::Bernoulli2)
        return Bernoulli2Field(sorted_coords(points)).sup_norm();

    auto field_at = [&](double x) {
        double acc = 0.0;
        for (std::size_t k = 0; k < points.size(); ++k) acc += safe_eval(kernel, x - points.coord(k));
        return acc;
    };
    double m = 0.0;
    for (int j = 0; j < grid; ++j) {
        double v = field_at(double(j) / double(grid));
        if (std::isfinite(v)) m = std::max(m, std::abs(v));
    }
    for (std::size_t k = 0; k < points.size(); ++k) {
        double v = field_at(points.coord(k));
        if (std::isfinite(v)) m = std::max(m, std::abs(v));
    }
    return m;
}

namespace {

QuadratureValue trapezoid_norm(const PointSet& points, const Kernel1D& kernel, int grid,
                               bool absolute) {
    auto field_at = [&](double x) {
        double acc = 0.0;
        for (std::size_t k = 0; k < points.size(); ++k) {
            double v = safe_eval(kernel, x - points.coord(k));
            if (!std::isfinite(v)) v = safe_eval(kernel, x - points.coord(k) + 1e-13);
            acc += v;
        }
        return absolute ? std::abs(acc) : acc;
    };
    auto trap = [&](int m) {
        double s = 0.0;
        for (int j = 0; j < m; ++j) s += field_at(double(j) / double(m));
        return s / double(m); // periodic trapezoid: endpoints coincide
    };
    int coarse = std::max(2, grid / 2);
    double fine_v = trap(grid);
    double coarse_v = trap(coarse);
    return {fine_v, std::abs(fine_v - coarse_v)};
}

} // namespace

QuadratureValue potential_l1_norm(const PointSet& points, const Kernel1D& kernel, int grid) {
    if (points.dim() != 1) throw std::invalid_argument("potential_l1_norm: d = 1 only");
    if (grid < 2) throw std::invalid_argument("potential_l1_norm: grid must be >= 2");
    if (kernel.kind() == Kernel1DKind::Bernoulli2)
        return {Bernoulli2Field(sorted_coords(points)).l1_norm(), 0.0};
    return trapezoid_norm(points, kernel, grid, true);
}

QuadratureValue potential_mean(const PointSet& points, const Kernel1D& kernel, int grid) {
    if (points.dim() != 1) throw std::invalid_argument("potential_mean: d = 1 only");
    if (kernel.kind() == Kernel1DKind::Bernoulli2)
        return {Bernoulli2Field(sorted_coords(points)).signed_integral(), 0.0};
    return trapezoid_norm(points, kernel, grid, false);
}

ValueWithTail potential_deriv_l2(const SpectralState& state, const Kernel1D& kernel) {
    if (state.dim() != 1) throw std::invalid_argument("potential_deriv_l2: 1D state required");
    double sq = 0.0;
    for (int k = 1; k <= state.k_max(); ++k) {
        double h = kernel.fourier_coefficient(k);
        double w = 4.0 * kPi * kPi * double(k) * double(k) * h * h;
        sq += 2.0 * w * std::norm(state.sum1d(k));
    }
    double nn = double(state.n());
    return {std::sqrt(sq), nn * nn * deriv_weight_tail(kernel, state.k_max())};
}

double potential_deriv_l2_exact(const PointSet& points) {
    if (points.dim() != 1) throw std::invalid_argument("potential_deriv_l2_exact: d = 1 only");
    return Bernoulli2Field(sorted_coords(points)).deriv_l2();
}

// --- uniformity functionals ---------------------------------------------------

double weyl_ratio(const SpectralState& state, const Kernel1D& kernel) {
    if (state.dim() != 1) throw std::invalid_argument("weyl_ratio: 1D state required");
    if (!kernel.finite_at_zero())
        throw std::invalid_argument("weyl_ratio: kernel must be finite at 0");
    if (state.n() == 0) return 0.0;
    double f0 = kernel.value_at_zero();
    double best = 0.0;
    for (int k = 1; k <= state.k_max(); ++k) {
        double h = kernel.fourier_coefficient(k);
        if (h <= 0.0) continue;
        double ratio = std::abs(state.sum1d(k)) * std::sqrt(h / (double(state.n()) * f0));
        best = std::max(best, ratio);
    }
    return best;
}

ValueWithTail diaphony(const SpectralState& state) {
    if (state.dim() != 1) throw std::invalid_argument("diaphony: 1D state required");
    if (state.n() == 0) return {0.0, 0.0};
    double nn = double(state.n());
    double sq = 0.0;
    for (int k = 1; k <= state.k_max(); ++k)
        sq += 2.0 * std::norm(state.sum1d(k) / nn) / (double(k) * double(k));
    double tail = state.k_max() == 0 ? kPi * kPi / 3.0 : 2.0 / double(state.k_max());
    return {std::sqrt(sq), tail};
}

double star_discrepancy(const PointSet& points) {
    if (points.dim() != 1) throw std::invalid_argument("star_discrepancy: d = 1 only");
    if (points.empty()) throw std::invalid_argument("star_discrepancy: empty point set");
    std::vector<double> s = sorted_coords(points);
    const double n = double(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        d = std::max(d, double(i + 1) / n - s[i]);
        d = std::max(d, s[i] - double(i) / n);
    }
    return d;
}

double extreme_discrepancy(const PointSet& points) {
    if (points.dim() != 1) throw std::invalid_argument("extreme_discrepancy: d = 1 only");
    if (points.empty()) throw std::invalid_argument("extreme_discrepancy: empty point set");
    std::vector<double> s = sorted_coords(points);
    const std::size_t n = s.size();
    const double dn = double(n);
    // the sup over arcs is attained with both boundaries at sample points,
    // approached from outside (count j-i+1) or inside (count j-i-1)
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double len = wrap01(s[j] - s[i]);
            double between = double((j + n - i) % n);
            d = std::max(d, (between + 1.0) / dn - len);
            d = std::max(d, len - (between - 1.0) / dn);
        }
    }
    return std::min(d, 1.0);
}

double interval_count_error(const PointSet& points, double left, double length) {
    if (points.dim() != 1) throw std::invalid_argument("interval_count_error: d = 1 only");
    if (length < 0.0 || length > 1.0)
        throw std::invalid_argument("interval_count_error: length must be in [0,1]");
    if (points.empty()) throw std::invalid_argument("interval_count_error: empty point set");
    std::size_t count = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (length == 1.0 || wrap01(points.coord(i) - left) < length) ++count;
    }
    return std::abs(double(count) / double(points.size()) - length);
}

ValueWithTail w2_proxy(const SpectralState& state) {
    if (state.n() == 0) return {0.0, 0.0};
    double nn = double(state.n());
    double sq = 0.0;
    if (state.dim() == 1) {
        for (int k = 1; k <= state.k_max(); ++k)
            sq += 2.0 * std::norm(state.sum1d(k) / nn) / (double(k) * double(k));
        double tail = state.k_max() == 0 ? kPi * kPi / 3.0 : 2.0 / double(state.k_max());
        return {std::sqrt(sq), tail};
    }
    const auto& sums = state.sums();
    const auto& k2 = state.freq_norm_sq();
    for (std::size_t i = 0; i < sums.size(); ++i) sq += 2.0 * std::norm(sums[i] / nn) / k2[i];
    // atoms have non-decaying spectra: the out-of-window part is unbounded in d >= 2
    return {std::sqrt(sq), std::numeric_limits<double>::infinity()};
}

double w2_circle_exact(const PointSet& points) { return wp_circle(points, 2); }
double w1_circle_exact(const PointSet& points) { return wp_circle(points, 1); }

// --- sweep engine ---------------------------------------------------------------

const std::vector<std::string>& known_metrics() {
    static const std::vector<std::string> m = {
        "energy",   "energy_spectral",  "sup_norm",           "l1_norm",
        "deriv_l2", "diaphony",         "star_discrepancy",   "extreme_discrepancy",
        "w2_exact", "w1_exact",         "w2_proxy",           "weyl_max_ratio",
    };
    return m;
}

int SweepConfig::resolved_window(int dim) const {
    if (spectral_window >= 0) return spectral_window;
    if (dim == 1) return 10000;
    return dim == 2 ? 32 : 16;
}

DiagnosticSweep::DiagnosticSweep(int dim, SweepConfig cfg, std::optional<Kernel1D> kernel,
                                 std::optional<KernelTd> kernel_td)
    : cfg_(std::move(cfg)), dim_(dim), kernel_(std::move(kernel)),
      kernel_td_(std::move(kernel_td)), prefix_(std::size_t(dim)) {
    if (kernel_ && dim_ != 1)
        throw std::invalid_argument("DiagnosticSweep: 1D kernel with d != 1 points");
    if (kernel_td_ && kernel_td_->dim() != dim_)
        throw std::invalid_argument("DiagnosticSweep: kernel/point dimension mismatch");
    const auto& known = known_metrics();
    for (const auto& m : cfg_.metrics) {
        if (std::find(known.begin(), known.end(), m) == known.end())
            throw std::invalid_argument("unknown metric: " + m);
        bool needs_kernel = m == "energy" || m == "energy_spectral" || m == "sup_norm" ||
                            m == "l1_norm" || m == "deriv_l2" || m == "weyl_max_ratio";
        if (needs_kernel && !kernel_ && !kernel_td_)
            throw std::invalid_argument("metric requires a kernel: " + m);
        bool one_d_only = m == "sup_norm" || m == "l1_norm" || m == "deriv_l2" ||
                          m == "diaphony" || m == "star_discrepancy" ||
                          m == "extreme_discrepancy" || m == "w2_exact" || m == "w1_exact" ||
                          m == "weyl_max_ratio";
        if (one_d_only && dim_ != 1)
            throw std::invalid_argument("metric is 1D-only: " + m);
        if (m == "weyl_max_ratio" && kernel_ && !kernel_->finite_at_zero())
            throw std::invalid_argument("weyl_max_ratio needs a kernel finite at 0");
    }
    need_energy_ = wants("energy");
    need_spectral_ = wants("energy_spectral") || wants("deriv_l2") || wants("diaphony") ||
                     wants("w2_proxy") || wants("weyl_max_ratio") ||
                     (need_energy_ && kernel_td_.has_value());
    if (need_spectral_) {
        int K = cfg_.resolved_window(dim_);
        if (kernel_td_ && need_energy_) K = std::max(K, kernel_td_->cutoff());
        state_ = dim_ == 1 ? SpectralState::line(K) : SpectralState::cube(dim_, K);
    }
}

bool DiagnosticSweep::wants(const std::string& m) const {
    return std::find(cfg_.metrics.begin(), cfg_.metrics.end(), m) != cfg_.metrics.end();
}

void DiagnosticSweep::absorb(std::span<const double> p) {
    if (int(p.size()) != dim_) throw std::invalid_argument("DiagnosticSweep::absorb: dimension mismatch");
    if (need_energy_ && !kernel_td_) {
        // incremental E_n = E_{n-1} + f(0) + 2 sum_{k<n} f(x_n - x_k)
        double row = 0.0;
        for (std::size_t k = 0; k < prefix_.size(); ++k)
            row += safe_eval(*kernel_, p[0] - prefix_.coord(k));
        energy_ += 2.0 * row;
        if (kernel_->finite_at_zero()) energy_ += kernel_->value_at_zero();
    }
    prefix_.append(p);
    if (state_) state_->add_point(p);
}

void DiagnosticSweep::absorb(const PointSet& ps) {
    for (std::size_t i = 0; i < ps.size(); ++i) absorb(ps.point(i));
}

MetricReport DiagnosticSweep::report() const {
    MetricReport rep;
    rep.n = prefix_.size();
    if (rep.n == 0) return rep;
    const bool b2 = kernel_ && kernel_->kind() == Kernel1DKind::Bernoulli2;

    if (wants("energy")) {
        if (kernel_td_) {
            auto e = energy_spectral(*state_, *kernel_td_);
            rep.set("energy", e.value, e.tail_bound);
        } else {
            rep.set("energy", energy_, 0.0);
        }
    }
    if (wants("energy_spectral")) {
        auto e = kernel_td_ ? energy_spectral(*state_, *kernel_td_)
                            : energy_spectral(*state_, *kernel_);
        rep.set("energy_spectral", e.value, e.tail_bound);
    }
    if (wants("sup_norm"))
        rep.set("sup_norm", potential_sup_norm(prefix_, *kernel_, cfg_.norm_grid), 0.0);
    if (wants("l1_norm")) {
        auto v = potential_l1_norm(prefix_, *kernel_, cfg_.norm_grid);
        rep.set("l1_norm", v.value, v.error_estimate);
    }
    if (wants("deriv_l2")) {
        if (b2) {
            rep.set("deriv_l2", potential_deriv_l2_exact(prefix_), 0.0);
        } else {
            auto v = potential_deriv_l2(*state_, *kernel_);
            rep.set("deriv_l2", v.value, v.tail_bound);
        }
    }
    if (wants("diaphony")) {
        auto v = diaphony(*state_);
        rep.set("diaphony", v.value, v.tail_bound);
    }
    if (wants("star_discrepancy")) rep.set("star_discrepancy", star_discrepancy(prefix_), 0.0);
    if (wants("extreme_discrepancy"))
        rep.set("extreme_discrepancy", extreme_discrepancy(prefix_), 0.0);
    if (wants("w2_exact")) rep.set("w2_exact", w2_circle_exact(prefix_), 0.0);
    if (wants("w1_exact")) rep.set("w1_exact", w1_circle_exact(prefix_), 0.0);
    if (wants("w2_proxy")) {
        auto v = w2_proxy(*state_);
        rep.set("w2_proxy", v.value, v.tail_bound);
    }
    if (wants("weyl_max_ratio")) rep.set("weyl_max_ratio", weyl_ratio(*state_, *kernel_), 0.0);
    return rep;
}

} // namespace greedyseq
