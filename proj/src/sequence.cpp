#include "greedyseq/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

#include "greedyseq/bernoulli_field.hpp"
#include "greedyseq/fft.hpp"
#include "greedyseq/parallel.hpp"
#include "greedyseq/torus.hpp"

namespace greedyseq {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(int m) { return m >= 2 && (m & (m - 1)) == 0; }

double safe_eval(const Kernel1D& k, double x) {
    try {
        return k.eval(x);
    } catch (const SingularEvalError&) {
        return std::numeric_limits<double>::infinity();
    }
}

// ---------------------------------------------------------------------------
// exact 1D engine (Bernoulli2 only)

class ExactEngine {
public:
    explicit ExactEngine(const PointSet& seed) {
        for (std::size_t i = 0; i < seed.size(); ++i) sorted_.push_back(seed.coord(i));
        std::sort(sorted_.begin(), sorted_.end());
    }

    double step(double gate_eps) {
        Bernoulli2Field field(sorted_);
        auto ext = field.argmin();
        double residual = field.eval_direct(ext.location);
        if (!(residual <= gate_eps))
            throw GateError("no nonpositive candidate: exact argmin residual " +
                            std::to_string(residual));
        sorted_.insert(std::upper_bound(sorted_.begin(), sorted_.end(), ext.location),
                       ext.location);
        last_ = ext.location;
        return residual;
    }

    double last() const { return last_; }

private:
    std::vector<double> sorted_;
    double last_ = 0.0;
};

// ---------------------------------------------------------------------------
// 1D grid engine with bracket refinement

class Grid1DEngine {
public:
    Grid1DEngine(const PointSet& seed, const Kernel1D& kernel, const SolverConfig& cfg)
        : kern_(&kernel), m_(cfg.grid_size), refine_tol_(cfg.refine_tol) {
        if (m_ < 2) throw std::invalid_argument("greedy_extend: grid_size must be >= 2");
        field_.assign(std::size_t(m_), 0.0);
        for (std::size_t i = 0; i < seed.size(); ++i) add_point(seed.coord(i));
    }

    double potential(double x) const {
        double acc = 0.0;
        for (double p : pts_) acc += safe_eval(*kern_, x - p);
        return acc;
    }

    double step(double gate_eps) {
        // grid argmin; ties resolve to the smallest coordinate because the scan
        // ascends and only strictly better values replace the incumbent
        std::size_t best = 0;
        double best_v = field_[0];
        for (std::size_t j = 1; j < field_.size(); ++j) {
            if (field_[j] < best_v) {
                best_v = field_[j];
                best = j;
            }
        }
        // refine inside the bracketing grid cell pair
        double h = 1.0 / double(m_);
        double lo = (double(best) - 1.0) * h;
        double hi = (double(best) + 1.0) * h;
        auto [x_ref, v_ref] = golden_section(lo, hi);
        double x = double(best) * h;
        double v = potential(x); // direct value, not the accumulated grid sum
        if (v_ref < v) {
            x = wrap01(x_ref);
            v = v_ref;
        }
        if (!(v <= gate_eps))
            throw GateError("no nonpositive candidate: grid minimum " + std::to_string(v) +
                            " (grid too coarse)");
        add_point(x);
        last_ = x;
        return v;
    }

    double last() const { return last_; }

private:
    void add_point(double x) {
        pts_.push_back(x);
        double h = 1.0 / double(m_);
        for (std::size_t j = 0; j < field_.size(); ++j)
            field_[j] += safe_eval(*kern_, double(j) * h - x);
    }

    std::pair<double, double> golden_section(double a, double b) const {
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - gr * (b - a);
        double d = a + gr * (b - a);
        double fc = potential(c), fd = potential(d);
        for (int it = 0; it < 200 && (b - a) > refine_tol_; ++it) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - gr * (b - a);
                fc = potential(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + gr * (b - a);
                fd = potential(d);
            }
        }
        double mid = 0.5 * (a + b);
        return {mid, potential(mid)};
    }

    const Kernel1D* kern_;
    int m_;
    double refine_tol_;
    std::vector<double> field_;
    std::vector<double> pts_;
    double last_ = 0.0;
};

// ---------------------------------------------------------------------------
// d-dimensional grid engine
//
// The potential of all absorbed points is kept on the full M^d grid. The
// kernel restricted to grid differences and the seed contribution are both
// spectral sums over the frequency window, so each is one inverse DFT of the
// folded coefficient cube. After that every greedy step is an O(M^d) argmin
// scan plus an O(M^d) translate-add of the difference table.

class GridTdEngine {
public:
    GridTdEngine(const PointSet& seed, const KernelTd& kernel, const SolverConfig& cfg)
        : d_(kernel.dim()), m_(cfg.grid_size), cutoff_(kernel.cutoff()) {
        if (!is_pow2(m_))
            throw std::invalid_argument("greedy_extend: grid_size must be a power of two in d >= 2");
        total_ = 1;
        for (int a = 0; a < d_; ++a) total_ *= std::size_t(m_);
        strides_.assign(std::size_t(d_), 1);
        for (int a = d_ - 2; a >= 0; --a) strides_[a] = strides_[a + 1] * std::size_t(m_);

        build_table(kernel);
        build_seed_field(kernel, seed);
    }

    double step(double gate_eps) {
        // deterministic parallel argmin: per-chunk winners combined in chunk
        // order under the total order (value, flat index); flat row-major index
        // order is lexicographic coordinate order
        int workers = worker_count();
        std::vector<double> chunk_v(std::size_t(workers) + 1,
                                    std::numeric_limits<double>::infinity());
        std::vector<std::size_t> chunk_j(std::size_t(workers) + 1, 0);
        parallel_chunks(total_, [&](int c, std::size_t lo, std::size_t hi) {
            double bv = std::numeric_limits<double>::infinity();
            std::size_t bj = lo;
            for (std::size_t j = lo; j < hi; ++j) {
                if (field_[j] < bv) {
                    bv = field_[j];
                    bj = j;
                }
            }
            chunk_v[std::size_t(c)] = bv;
            chunk_j[std::size_t(c)] = bj;
        });
        double best_v = std::numeric_limits<double>::infinity();
        std::size_t best = 0;
        for (std::size_t c = 0; c < chunk_v.size(); ++c) {
            if (chunk_v[c] < best_v) {
                best_v = chunk_v[c];
                best = chunk_j[c];
            }
        }
        if (!(best_v <= gate_eps))
            throw GateError("no nonpositive candidate: grid minimum " + std::to_string(best_v) +
                            " (grid too coarse)");
        add_grid_point(best);
        last_.assign(std::size_t(d_), 0.0);
        for (int a = 0; a < d_; ++a)
            last_[std::size_t(a)] = double((best / strides_[std::size_t(a)]) % std::size_t(m_)) / double(m_);
        return best_v;
    }

    const std::vector<double>& last() const { return last_; }

private:
    // c_k = a_k / (4 pi^2 |k|^2) for 0 < |k|_inf <= K, folded mod M.
    template <class F>
    void for_each_window_freq(F&& f) const {
        std::vector<int> k(std::size_t(d_), -cutoff_);
        while (true) {
            bool zero = true;
            for (int a = 0; a < d_; ++a)
                if (k[std::size_t(a)] != 0) zero = false;
            if (!zero) f(k);
            int a = d_ - 1;
            while (a >= 0 && k[std::size_t(a)] == cutoff_) {
                k[std::size_t(a)] = -cutoff_;
                --a;
            }
            if (a < 0) break;
            ++k[std::size_t(a)];
        }
    }

    std::size_t fold_flat(const std::vector<int>& k) const {
        std::size_t flat = 0;
        for (int a = 0; a < d_; ++a) {
            int r = k[std::size_t(a)] % m_;
            if (r < 0) r += m_;
            flat += std::size_t(r) * strides_[std::size_t(a)];
        }
        return flat;
    }

    void build_table(const KernelTd& kernel) {
        std::vector<std::complex<double>> cube(total_, {0.0, 0.0});
        for_each_window_freq([&](const std::vector<int>& k) {
            double k2 = 0.0;
            for (int a = 0; a < d_; ++a) k2 += double(k[std::size_t(a)]) * double(k[std::size_t(a)]);
            cube[fold_flat(k)] += kernel.coefficient(k) / (4.0 * kPi * kPi * k2);
        });
        idft_cube(cube, d_, std::size_t(m_));
        table_.resize(total_);
        for (std::size_t j = 0; j < total_; ++j) table_[j] = cube[j].real();
    }

    void build_seed_field(const KernelTd& kernel, const PointSet& seed) {
        std::vector<std::complex<double>> cube(total_, {0.0, 0.0});
        for_each_window_freq([&](const std::vector<int>& k) {
            double k2 = 0.0;
            std::complex<double> s(0.0, 0.0);
            for (std::size_t i = 0; i < seed.size(); ++i) {
                double phase = 0.0;
                auto p = seed.point(i);
                for (int a = 0; a < d_; ++a) phase += double(k[std::size_t(a)]) * p[std::size_t(a)];
                s += std::complex<double>(std::cos(-2.0 * kPi * phase), std::sin(-2.0 * kPi * phase));
            }
            for (int a = 0; a < d_; ++a) k2 += double(k[std::size_t(a)]) * double(k[std::size_t(a)]);
            cube[fold_flat(k)] += s * (kernel.coefficient(k) / (4.0 * kPi * kPi * k2));
        });
        idft_cube(cube, d_, std::size_t(m_));
        field_.resize(total_);
        for (std::size_t j = 0; j < total_; ++j) field_[j] = cube[j].real();
    }

    void add_grid_point(std::size_t flat) {
        // per-axis rotated offsets into the difference table
        std::vector<std::vector<std::size_t>> rot(static_cast<std::size_t>(d_));
        for (int a = 0; a < d_; ++a) {
            std::size_t ja = (flat / strides_[std::size_t(a)]) % std::size_t(m_);
            auto& r = rot[std::size_t(a)];
            r.resize(std::size_t(m_));
            for (int t = 0; t < m_; ++t)
                r[std::size_t(t)] = std::size_t((t - int(ja) + m_) % m_) * strides_[std::size_t(a)];
        }
        std::vector<int> ctr(std::size_t(d_ > 1 ? d_ - 1 : 0), 0);
        const std::size_t* rl = rot[std::size_t(d_ - 1)].data();
        while (true) {
            std::size_t base = 0, dbase = 0;
            for (int a = 0; a + 1 < d_; ++a) {
                base += std::size_t(ctr[std::size_t(a)]) * strides_[std::size_t(a)];
                dbase += rot[std::size_t(a)][std::size_t(ctr[std::size_t(a)])];
            }
            double* f = field_.data() + base;
            const double* t = table_.data();
            for (int u = 0; u < m_; ++u) f[u] += t[dbase + rl[u]];
            int a = d_ - 2;
            while (a >= 0 && ++ctr[std::size_t(a)] == m_) {
                ctr[std::size_t(a)] = 0;
                --a;
            }
            if (a < 0) break;
        }
    }

    int d_, m_, cutoff_;
    std::size_t total_ = 0;
    std::vector<std::size_t> strides_;
    std::vector<double> table_;
    std::vector<double> field_;
    std::vector<double> last_;
};

nlohmann::json solver_json(const SolverConfig& cfg) {
    return {{"mode", to_string(cfg.mode)},
            {"grid_size", cfg.grid_size},
            {"refine_tol", cfg.refine_tol},
            {"gate_eps", cfg.resolved_gate_eps()}};
}

nlohmann::json seed_json(const PointSet& seed) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < seed.size(); ++i) {
        auto p = seed.point(i);
        arr.push_back(std::vector<double>(p.begin(), p.end()));
    }
    return arr;
}

} // namespace

std::string to_string(SolverMode m) {
    switch (m) {
        case SolverMode::ExactPiecewise: return "exact_piecewise";
        case SolverMode::GridRefine: return "grid_refine";
        case SolverMode::Grid: return "grid";
    }
    return "?";
}

SolverMode solver_mode_from_string(const std::string& s) {
    if (s == "exact_piecewise" || s == "exact") return SolverMode::ExactPiecewise;
    if (s == "grid_refine") return SolverMode::GridRefine;
    if (s == "grid") return SolverMode::Grid;
    throw std::invalid_argument("unknown solver mode: " + s);
}

double GreedyStats::max_gate_residual() const {
    double m = -std::numeric_limits<double>::infinity();
    for (double r : gate_residuals) m = std::max(m, r);
    return gate_residuals.empty() ? 0.0 : m;
}

PointSet greedy_extend(const PointSet& points, const Kernel1D& kernel,
                       const SolverConfig& config, int steps, GreedyStats* stats) {
    if (points.empty()) throw std::invalid_argument("greedy_extend: seed must be nonempty");
    if (points.dim() != 1) throw std::invalid_argument("greedy_extend: Kernel1D needs d = 1 points");
    if (steps < 0) throw std::invalid_argument("greedy_extend: steps must be >= 0");
    if (config.mode == SolverMode::ExactPiecewise && kernel.kind() != Kernel1DKind::Bernoulli2)
        throw std::invalid_argument("greedy_extend: exact_piecewise mode requires the bernoulli2 kernel");
    if (config.mode == SolverMode::Grid)
        throw std::invalid_argument("greedy_extend: grid mode is for d >= 2; use grid_refine");

    PointSet out = points;
    double gate = config.resolved_gate_eps();
    if (config.mode == SolverMode::ExactPiecewise) {
        ExactEngine eng(points);
        for (int s = 0; s < steps; ++s) {
            double r = eng.step(gate);
            out.append1(eng.last());
            if (stats) stats->gate_residuals.push_back(r);
        }
    } else {
        Grid1DEngine eng(points, kernel, config);
        for (int s = 0; s < steps; ++s) {
            double r = eng.step(gate);
            out.append1(eng.last());
            if (stats) stats->gate_residuals.push_back(r);
        }
    }
    out.provenance.kind = "greedy";
    out.provenance.detail = {{"kernel", kernel.name()},
                             {"dim", 1},
                             {"seed_points", seed_json(points)},
                             {"solver", solver_json(config)},
                             {"steps", steps}};
    return out;
}

PointSet greedy_extend(const PointSet& points, const KernelTd& kernel,
                       const SolverConfig& config, int steps, GreedyStats* stats) {
    if (points.empty()) throw std::invalid_argument("greedy_extend: seed must be nonempty");
    if (int(points.dim()) != kernel.dim())
        throw std::invalid_argument("greedy_extend: point/kernel dimension mismatch");
    if (steps < 0) throw std::invalid_argument("greedy_extend: steps must be >= 0");
    if (config.mode != SolverMode::Grid)
        throw std::invalid_argument("greedy_extend: d >= 2 requires grid mode");

    PointSet out = points;
    double gate = config.resolved_gate_eps();
    GridTdEngine eng(points, kernel, config);
    for (int s = 0; s < steps; ++s) {
        double r = eng.step(gate);
        out.append(eng.last());
        if (stats) stats->gate_residuals.push_back(r);
    }
    out.provenance.kind = "greedy";
    out.provenance.detail = {{"kernel", kernel.name()},
                             {"dim", kernel.dim()},
                             {"cutoff", kernel.cutoff()},
                             {"seed_points", seed_json(points)},
                             {"solver", solver_json(config)},
                             {"steps", steps}};
    return out;
}

ArgminResult exact_bernoulli_argmin(std::vector<double> points) {
    if (points.empty()) throw std::invalid_argument("exact_bernoulli_argmin: empty point set");
    for (double& p : points) p = wrap01(p);
    std::sort(points.begin(), points.end());
    Bernoulli2Field field(std::move(points));
    auto e = field.argmin();
    return {e.location, e.value};
}

PointSet kronecker(double alpha, int n) {
    if (n < 1) throw std::invalid_argument("kronecker: n must be >= 1");
    PointSet p(1);
    for (int m = 1; m <= n; ++m) p.append1(wrap01(double(m) * alpha));
    p.provenance.kind = "kronecker";
    p.provenance.detail = {{"alpha", alpha}, {"n", n}};
    return p;
}

double radical_inverse(std::uint64_t m, int base) {
    double r = 0.0;
    double scale = 1.0 / double(base);
    while (m > 0) {
        r += scale * double(m % std::uint64_t(base));
        m /= std::uint64_t(base);
        scale /= double(base);
    }
    return r;
}

PointSet van_der_corput(int base, int n) {
    if (base < 2) throw std::invalid_argument("van_der_corput: base must be >= 2");
    if (n < 1) throw std::invalid_argument("van_der_corput: n must be >= 1");
    PointSet p(1);
    for (int m = 1; m <= n; ++m) p.append1(radical_inverse(std::uint64_t(m), base));
    p.provenance.kind = "vdc";
    p.provenance.detail = {{"base", base}, {"n", n}};
    return p;
}

PointSet random_points(std::uint64_t seed, int n, int d) {
    if (n < 1 || d < 1) throw std::invalid_argument("random_points: n and d must be >= 1");
    std::mt19937_64 rng(seed);
    PointSet p(static_cast<std::size_t>(d));
    std::vector<double> buf(static_cast<std::size_t>(d));
    for (int i = 0; i < n; ++i) {
        for (int a = 0; a < d; ++a)
            buf[std::size_t(a)] = double(rng() >> 11) * 0x1.0p-53;
        p.append(buf);
    }
    p.provenance.kind = "random";
    p.provenance.detail = {{"seed", seed}, {"n", n}, {"dim", d}};
    return p;
}

PointSet midpoint_lattice(int n) {
    if (n < 1) throw std::invalid_argument("midpoint_lattice: n must be >= 1");
    PointSet p(1);
    for (int i = 1; i <= n; ++i) p.append1(double(2 * i - 1) / double(2 * n));
    p.provenance.kind = "lattice";
    p.provenance.detail = {{"n", n}};
    return p;
}

} // namespace greedyseq
