// greedyseq: generate greedy kernel-minimization sequences on [0,1) and T^d,
// analyze point files, compare generators and run experiment specs.
//
// Exit codes: 0 success, 2 config error, 3 numeric-gate failure, 4 I/O error.
// Errors also go to stderr as one JSON object per failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "greedyseq/diagnostics.hpp"
#include "greedyseq/experiments.hpp"
#include "greedyseq/io.hpp"
#include "greedyseq/sequence.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace greedyseq;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitGate = 3;
constexpr int kExitIo = 4;

void emit_error(int code, const std::string& kind, const std::string& message) {
    json err = {{"error", {{"code", code}, {"kind", kind}, {"message", message}}}};
    std::cerr << err.dump() << "\n";
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

std::vector<int> parse_checkpoints(const std::string& spec, int n_max) {
    std::vector<int> cps;
    if (spec == "pow2") {
        for (int n = 2; n <= n_max; n *= 2) cps.push_back(n);
        if (cps.empty() || cps.back() != n_max) cps.push_back(n_max);
    } else {
        for (const auto& tok : split_list(spec)) cps.push_back(std::stoi(tok));
    }
    return cps;
}

struct KernelFlags {
    std::string kernel = "bernoulli2";
    std::string kernel_json_path;
    int dim = 1;
    int cutoff = -1;

    void attach(CLI::App* cmd, bool required) {
        auto* opt = cmd->add_option("--kernel", kernel,
                                    "kernel: bernoulli2 | logsin | fourier | green");
        if (required) opt->required();
        cmd->add_option("--kernel-json", kernel_json_path,
                        "JSON kernel document (fourier coefficients or green spec)");
        cmd->add_option("--dim", dim, "torus dimension (green kernel)")->check(CLI::Range(1, 8));
        cmd->add_option("--cutoff", cutoff, "frequency cutoff (green kernel)");
    }

    GeneratorSpec generator_base() const {
        GeneratorSpec g;
        g.type = "greedy";
        g.kernel = kernel;
        g.dim = dim;
        if (!kernel_json_path.empty()) g.kernel_detail = io::read_json(kernel_json_path);
        if (kernel == "green") {
            g.dim = dim >= 2 ? dim : 2;
            if (!g.kernel_detail.contains("dim")) {
                int k = cutoff > 0 ? cutoff : (g.dim == 2 ? 32 : 16);
                g.kernel_detail = {{"type", "green"}, {"dim", g.dim}, {"cutoff", k}};
            }
        }
        return g;
    }
};

GeneratorSpec parse_generator(const std::string& text) {
    if (!text.empty() && text.front() == '{') return GeneratorSpec::from_json(json::parse(text));
    // shorthand: kronecker:<alpha|sqrt2|golden>, vdc:<base>, random:<seed>,
    // lattice, greedy:<kernel>:<seed,seed,...>
    std::vector<std::string> parts;
    {
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ':')) parts.push_back(tok);
    }
    if (parts.empty()) throw std::invalid_argument("empty generator spec");
    GeneratorSpec g;
    g.type = parts[0];
    if (g.type == "kronecker") {
        if (parts.size() < 2) throw std::invalid_argument("kronecker needs an alpha");
        g.alpha = parts[1] == "sqrt2" ? std::sqrt(2.0)
                                      : (parts[1] == "golden" ? (1.0 + std::sqrt(5.0)) / 2.0
                                                              : std::stod(parts[1]));
    } else if (g.type == "vdc") {
        if (parts.size() < 2) throw std::invalid_argument("vdc needs a base");
        g.base = std::stoi(parts[1]);
    } else if (g.type == "random") {
        if (parts.size() < 2) throw std::invalid_argument("random needs a seed");
        g.rng_seed = std::stoull(parts[1]);
    } else if (g.type == "greedy") {
        if (parts.size() < 3) throw std::invalid_argument("greedy needs kernel and seeds");
        g.kernel = parts[1];
        g.seed_literals = split_list(parts[2]);
    } else if (g.type != "lattice") {
        throw std::invalid_argument("unknown generator shorthand: " + text);
    }
    return g;
}

int run_generate(const KernelFlags& kf, const std::string& seed_csv,
                 const std::string& seed_file, int n, const std::string& mode, int grid,
                 double refine_tol, double gate_eps, const std::string& out_dir) {
    GeneratorSpec gen = kf.generator_base();
    if (!seed_file.empty()) {
        PointSet seeds = io::read_pointset(seed_file);
        for (std::size_t i = 0; i < seeds.size(); ++i)
            for (double c : seeds.point(i)) gen.seed_literals.push_back(io::format_double(c));
        if (int(seeds.dim()) != gen.dim && seeds.dim() > 1) gen.dim = int(seeds.dim());
    } else {
        gen.seed_literals = split_list(seed_csv);
    }
    if (gen.seed_literals.empty()) throw std::invalid_argument("generate: no seed points given");

    SolverConfig cfg = gen.resolved_solver();
    if (!mode.empty()) cfg.mode = solver_mode_from_string(mode);
    if (grid > 0) cfg.grid_size = grid;
    if (refine_tol > 0) cfg.refine_tol = refine_tol;
    if (!std::isnan(gate_eps)) cfg.gate_eps = gate_eps;
    gen.solver = cfg;

    GreedyStats stats;
    PointSet run = generate(gen, n, &stats);
    fs::path out = fs::path(out_dir) / "points.csv";
    io::write_pointset(out, run);
    double final_residual = stats.gate_residuals.empty() ? 0.0 : stats.gate_residuals.back();
    std::cout << "wrote " << out.string() << " (" << run.size() << " points)\n";
    std::cout << "final greedy-gate residual: " << io::format_double(final_residual) << "\n";
    return kExitOk;
}

int run_analyze(const KernelFlags& kf, bool kernel_given, bool dim_given,
                const std::string& points_path, const std::string& metrics_csv,
                const std::string& checkpoints_spec, int window, int norm_grid,
                const std::string& out_dir) {
    PointSet pts = io::read_pointset(points_path);
    auto metrics = split_list(metrics_csv);
    if (metrics.empty()) throw std::invalid_argument("analyze: no metrics requested");

    SweepConfig cfg;
    cfg.metrics = metrics;
    cfg.spectral_window = window;
    cfg.norm_grid = norm_grid;

    std::optional<Kernel1D> k1;
    std::optional<KernelTd> ktd;
    if (kernel_given) {
        KernelFlags resolved = kf;
        if (!dim_given) resolved.dim = int(pts.dim()); // kernel follows the file
        GeneratorSpec gen = resolved.generator_base();
        gen.dim = int(pts.dim());
        k1 = gen.kernel_1d();
        ktd = gen.kernel_td();
    }
    DiagnosticSweep sweep(int(pts.dim()), cfg, k1, ktd);

    auto cps = parse_checkpoints(checkpoints_spec, int(pts.size()));
    std::vector<MetricReport> reports;
    std::size_t next = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        sweep.absorb(pts.point(i));
        if (next < cps.size() && int(i + 1) == cps[next]) {
            reports.push_back(sweep.report());
            ++next;
        }
    }
    if (reports.empty()) throw std::invalid_argument("analyze: no checkpoint within the point count");

    fs::path out = fs::path(out_dir) / "metrics.csv";
    io::write_metric_rows(out, io::rows_from_reports(reports));
    json arr = json::array();
    for (const auto& rep : reports) {
        json row = {{"n", rep.n}};
        for (const auto& [name, vt] : rep.values) {
            row[name] = vt.value;
            row[name + "_tail_bound"] = vt.tail_bound;
        }
        arr.push_back(row);
    }
    io::write_json(fs::path(out_dir) / "metrics.json", arr);
    std::cout << "wrote " << out.string() << " (" << reports.size() << " checkpoints)\n";
    return kExitOk;
}

int run_compare(const std::vector<std::string>& gen_specs, const std::string& metrics_csv,
                int n_max, const std::string& checkpoints_spec, int window,
                const std::string& analysis_kernel, const std::string& out_dir) {
    if (gen_specs.size() < 2) throw std::invalid_argument("compare: need two generators");
    auto metrics = split_list(metrics_csv);
    if (metrics.empty()) throw std::invalid_argument("compare: no metrics requested");
    auto cps = parse_checkpoints(checkpoints_spec, n_max);

    json summary = json::array();
    std::ostringstream table;
    table << "generator,n,metric,value,tail_bound\n";
    for (const auto& text : gen_specs) {
        ScanSpec spec;
        spec.generator = parse_generator(text);
        spec.name = spec.generator.label();
        spec.checkpoints = cps;
        spec.metrics = metrics;
        spec.spectral_window = window;
        spec.analysis_kernel = {{"type", analysis_kernel}};
        for (const auto& m : metrics) spec.fits.push_back({m, "c_pow_n", std::nullopt});
        auto result = run_scan(spec);
        for (const auto& rep : result.reports)
            for (const auto& [name, vt] : rep.values)
                table << spec.name << ',' << rep.n << ',' << name << ','
                      << io::format_double(vt.value) << ',' << io::format_double(vt.tail_bound)
                      << "\n";
        json fits = json::array();
        for (std::size_t i = 0; i < result.fits.size(); ++i) {
            fits.push_back({{"metric", metrics[i]},
                            {"model", "c_pow_n"},
                            {"c", result.fits[i].c},
                            {"alpha", result.fits[i].alpha},
                            {"residual_rms", result.fits[i].residual_rms}});
        }
        summary.push_back({{"generator", spec.name}, {"fits", fits}});
    }
    fs::path out = fs::path(out_dir) / "comparison.csv";
    io::atomic_write(out, table.str());
    io::write_json(fs::path(out_dir) / "comparison_fits.json", summary);
    std::cout << "wrote " << out.string() << "\n";
    return kExitOk;
}

int run_scan_cmd(const std::string& spec_path, const std::string& out_dir) {
    ScanSpec spec = ScanSpec::from_json(io::read_json(spec_path));
    auto result = run_scan(spec);
    fs::path dir = fs::path(out_dir) / spec.name;
    write_scan_result(dir, spec, result);
    std::cout << "wrote " << dir.string() << "/ (" << result.reports.size() << " checkpoints, "
              << result.fits.size() << " fits)\n";
    return kExitOk;
}

int run_figures(const KernelFlags& kf, const std::string& seed_csv, int n,
                const std::string& n_list_csv, int curve_grid, const std::string& out_dir) {
    GeneratorSpec gen = kf.generator_base();
    gen.seed_literals = split_list(seed_csv);
    if (gen.dim != 1) throw std::invalid_argument("figures: 1D runs only");
    auto k1 = gen.kernel_1d();
    if (!k1) throw std::invalid_argument("figures: unknown 1D kernel");
    std::vector<int> n_list;
    for (const auto& tok : split_list(n_list_csv)) n_list.push_back(std::stoi(tok));

    PointSet run = generate(gen, n);
    auto written = figure_data(run, *k1, n_list, out_dir, curve_grid);
    for (const auto& p : written) std::cout << "wrote " << p.string() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"greedy kernel-minimization sequences and uniformity diagnostics"};
    app.require_subcommand(1);

    // generate
    auto* gen_cmd = app.add_subcommand("generate", "generate a greedy sequence and write CSV");
    KernelFlags gen_kernel;
    gen_kernel.attach(gen_cmd, true);
    std::string seed_csv, seed_file, mode, out_dir = ".";
    int n = 64, grid = -1;
    double refine_tol = -1.0, gate_eps = std::numeric_limits<double>::quiet_NaN();
    gen_cmd->add_option("--seed", seed_csv, "comma-separated seed coordinates (rationals allowed)");
    gen_cmd->add_option("--seed-file", seed_file, "points CSV with the seed block");
    gen_cmd->add_option("--n", n, "total number of points (seeds included)")->required();
    gen_cmd->add_option("--mode", mode, "exact_piecewise | grid_refine | grid");
    gen_cmd->add_option("--grid", grid, "grid candidates per axis");
    gen_cmd->add_option("--refine-tol", refine_tol, "1D refinement bracket tolerance");
    gen_cmd->add_option("--gate-eps", gate_eps, "nonpositivity gate tolerance");
    gen_cmd->add_option("--out", out_dir, "output directory");

    // analyze
    auto* ana_cmd = app.add_subcommand("analyze", "compute metrics over prefixes of a points file");
    KernelFlags ana_kernel;
    ana_kernel.attach(ana_cmd, false);
    std::string points_path, metrics_csv = "star_discrepancy,w2_exact", ana_cps = "pow2",
                ana_out = ".";
    int window = -1, norm_grid = 4096;
    ana_cmd->add_option("--points", points_path, "points CSV")->required();
    ana_cmd->add_option("--metrics", metrics_csv, "comma-separated metric names");
    ana_cmd->add_option("--checkpoints", ana_cps, "\"pow2\" or comma-separated prefix sizes");
    ana_cmd->add_option("--window", window, "spectral window K");
    ana_cmd->add_option("--norm-grid", norm_grid, "grid for non-exact norms");
    ana_cmd->add_option("--out", ana_out, "output directory");

    // compare
    auto* cmp_cmd = app.add_subcommand("compare", "side-by-side metrics for several generators");
    std::vector<std::string> gen_specs;
    std::string cmp_metrics = "energy,w2_exact,star_discrepancy", cmp_cps = "pow2", cmp_out = ".",
                cmp_kernel = "bernoulli2";
    int cmp_n = 1024, cmp_window = -1;
    cmp_cmd->add_option("--gen", gen_specs,
                        "generator spec (JSON or shorthand like kronecker:sqrt2); repeat >= 2x");
    cmp_cmd->add_option("--metrics", cmp_metrics, "comma-separated metric names");
    cmp_cmd->add_option("--n", cmp_n, "max prefix size");
    cmp_cmd->add_option("--checkpoints", cmp_cps, "\"pow2\" or comma-separated prefix sizes");
    cmp_cmd->add_option("--window", cmp_window, "spectral window K");
    cmp_cmd->add_option("--kernel", cmp_kernel, "analysis kernel for kernel metrics");
    cmp_cmd->add_option("--out", cmp_out, "output directory");

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "run an experiment spec file");
    std::string spec_path, scan_out = ".";
    scan_cmd->add_option("--spec", spec_path, "ScanSpec JSON file")->required();
    scan_cmd->add_option("--out", scan_out, "output directory");

    // figures
    auto* fig_cmd = app.add_subcommand("figures", "emit potential curves and the scatter table");
    KernelFlags fig_kernel;
    fig_kernel.attach(fig_cmd, true);
    std::string fig_seed, fig_nlist, fig_out = ".";
    int fig_n = 250, fig_grid = 2048;
    fig_cmd->add_option("--seed", fig_seed, "comma-separated seed coordinates")->required();
    fig_cmd->add_option("--n", fig_n, "run length")->required();
    fig_cmd->add_option("--n-list", fig_nlist, "prefix sizes for potential curves");
    fig_cmd->add_option("--curve-grid", fig_grid, "samples per potential curve");
    fig_cmd->add_option("--out", fig_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        emit_error(kExitConfig, "config", e.what());
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*gen_cmd)
            return run_generate(gen_kernel, seed_csv, seed_file, n, mode, grid, refine_tol,
                                gate_eps, out_dir);
        if (*ana_cmd)
            return run_analyze(ana_kernel, ana_cmd->count("--kernel") > 0,
                               ana_cmd->count("--dim") > 0, points_path, metrics_csv, ana_cps,
                               window, norm_grid, ana_out);
        if (*cmp_cmd)
            return run_compare(gen_specs, cmp_metrics, cmp_n, cmp_cps, cmp_window, cmp_kernel,
                               cmp_out);
        if (*scan_cmd) return run_scan_cmd(spec_path, scan_out);
        if (*fig_cmd)
            return run_figures(fig_kernel, fig_seed, fig_n, fig_nlist, fig_grid, fig_out);
    } catch (const GateError& e) {
        emit_error(kExitGate, "gate", e.what());
        return kExitGate;
    } catch (const std::invalid_argument& e) {
        emit_error(kExitConfig, "config", e.what());
        return kExitConfig;
    } catch (const std::domain_error& e) {
        emit_error(kExitConfig, "config", e.what());
        return kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        emit_error(kExitConfig, "config", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        emit_error(kExitIo, "io", e.what());
        return kExitIo;
    }
    return kExitOk;
}
