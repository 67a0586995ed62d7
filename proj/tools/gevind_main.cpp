// gevind command-line tool: K sweeps, phase-space scans, bin-size studies,
// orbit dumps and stand-alone GEV fits for the standard map.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gevind/harness.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* tool_version = "0.1.0";

struct BlockFlags {
    std::optional<std::size_t> k, n, m;
};

void add_block_flags(CLI::App* cmd, BlockFlags& flags) {
    cmd->add_option("--k-total", flags.k, "total series length k (= bins * bin-size)");
    cmd->add_option("--bins", flags.n, "number of bins n");
    cmd->add_option("--bin-size", flags.m, "observations per bin m");
}

gevind::BlockSpec resolve_blocks(const BlockFlags& f, std::size_t def_n, std::size_t def_m) {
    using gevind::BlockSpec;
    if (f.k && f.n && f.m) {
        BlockSpec b{*f.k, *f.n, *f.m};
        b.validate();
        return b;
    }
    if (f.n && f.m) return BlockSpec::from_bins(*f.n, *f.m);
    if (f.k && f.n) {
        if (*f.n == 0 || *f.k % *f.n != 0)
            throw CLI::ValidationError("--k-total must be a multiple of --bins");
        return BlockSpec{*f.k, *f.n, *f.k / *f.n};
    }
    if (f.k && f.m) {
        if (*f.m == 0 || *f.k % *f.m != 0)
            throw CLI::ValidationError("--k-total must be a multiple of --bin-size");
        return BlockSpec{*f.k, *f.k / *f.m, *f.m};
    }
    if (f.k) {
        if (*f.k % def_m != 0)
            throw CLI::ValidationError("--k-total must be a multiple of the bin size (" +
                                       std::to_string(def_m) + "); pass --bins or --bin-size");
        return BlockSpec{*f.k, *f.k / def_m, def_m};
    }
    if (f.n) return BlockSpec::from_bins(*f.n, def_m);
    if (f.m) return BlockSpec::from_bins(def_n, *f.m);
    return BlockSpec::from_bins(def_n, def_m);
}

struct ObservableFlags {
    std::vector<std::string> names{"g1", "g2", "g3"};
    double alpha = 3.0;
    double c = 0.0;
    double floor = 1e-15;
};

void add_observable_flags(CLI::App* cmd, ObservableFlags& flags) {
    cmd->add_option("--observables", flags.names, "observables to fit (g1, g2, g3)")
        ->delimiter(',');
    cmd->add_option("--alpha", flags.alpha, "exponent alpha of g2/g3")->check(CLI::PositiveNumber);
    cmd->add_option("--c", flags.c, "additive constant of g3");
    cmd->add_option("--distance-floor", flags.floor, "clamp for near-zero distances");
}

std::vector<gevind::ObservableSpec> resolve_observables(const ObservableFlags& f) {
    std::vector<gevind::ObservableSpec> specs;
    for (const std::string& name : f.names) {
        auto kind = gevind::observable_from_name(name);
        if (!kind) throw CLI::ValidationError("unknown observable '" + name + "'");
        specs.push_back({*kind, f.alpha, f.c, f.floor});
    }
    if (specs.empty()) throw CLI::ValidationError("no observables requested");
    return specs;
}

json blocks_json(const gevind::BlockSpec& b) {
    return {{"k", b.k}, {"n", b.n}, {"m", b.m}};
}

json observables_json(const std::vector<gevind::ObservableSpec>& specs) {
    json arr = json::array();
    for (const auto& o : specs)
        arr.push_back({{"kind", gevind::observable_name(o.kind)},
                       {"alpha", o.alpha},
                       {"c", o.c},
                       {"distance_floor", o.distance_floor}});
    return arr;
}

void write_manifest(const fs::path& dir, const std::string& command, const json& config,
                    const std::vector<std::string>& outputs) {
    json manifest = {{"tool", "gevind"},
                     {"version", tool_version},
                     {"command", command},
                     {"config", config},
                     {"outputs", outputs}};
    const fs::path path = dir / "run.json";
    std::ofstream out(path);
    if (!out) throw gevind::IoError("cannot open for writing:", path);
    out << manifest.dump(2) << '\n';
    if (!out.flush()) throw gevind::IoError("write failed:", path);
}

fs::path prepare_out_dir(const std::string& out) {
    fs::path dir(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw gevind::IoError("cannot create output directory:", dir);
    return dir;
}

std::string format_double(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void write_sweep_stats(const std::vector<gevind::EnsembleStats>& stats, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw gevind::IoError("cannot open for writing:", path);
    out << "K,observable,fits_ok,failed_fraction,"
           "mean_mu,mean_sigma,mean_xi,std_mu,std_sigma,std_xi\n";
    for (const auto& s : stats) {
        out << format_double(s.K) << ',' << gevind::observable_name(s.kind) << ','
            << s.fits_ok << ',' << format_double(s.failed_fraction) << ','
            << format_double(s.mean.mu) << ',' << format_double(s.mean.sigma) << ','
            << format_double(s.mean.xi) << ',' << format_double(s.stddev.mu) << ','
            << format_double(s.stddev.sigma) << ',' << format_double(s.stddev.xi) << '\n';
    }
    if (!out.flush()) throw gevind::IoError("write failed:", path);
}

std::vector<std::string> scan_pixmaps(const gevind::GridScanResult& result, const fs::path& dir) {
    std::vector<std::string> written;
    auto emit = [&](const std::string& field, const std::string& name) {
        gevind::render_heatmap(result.cells, result.config.resolution, field, dir / name);
        written.push_back(name);
    };
    for (const auto& spec : result.config.observables) {
        const std::string o = gevind::observable_name(spec.kind);
        emit("xi_" + o, "xi_" + o + ".ppm");
        if (spec.kind == gevind::ObservableKind::G1) emit("sigma_g1", "sigma_g1.ppm");
    }
    if (result.config.roundoff_t > 0) {
        emit("log10_R", "log10_R.ppm");
        emit("log10_div", "log10_div.ppm");
    }
    return written;
}

void print_scan_summary(const gevind::GridScanResult& result, double threshold) {
    std::size_t ok = 0, degenerate = 0, domain = 0, below = 0;
    for (const auto& cell : result.cells) {
        for (const auto& o : cell.observables) {
            if (o.kind != gevind::ObservableKind::G1) continue;
            switch (o.outcome) {
                case gevind::FitOutcome::Ok:
                    ++ok;
                    if (o.deviation->xi <= threshold) ++below;
                    break;
                case gevind::FitOutcome::Degenerate: ++degenerate; break;
                case gevind::FitOutcome::DomainError: ++domain; break;
            }
        }
    }
    const double total = static_cast<double>(result.cells.size());
    std::printf("cells: %zu  g1 fits ok: %zu  degenerate: %zu  domain errors: %zu\n",
                result.cells.size(), ok, degenerate, domain);
    if (ok > 0)
        std::printf("g1 |xi' - theory| <= %g (chaotic by threshold): %.1f%%\n", threshold,
                    100.0 * static_cast<double>(below) / total);
}

std::vector<double> read_values_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw gevind::IoError("cannot open for reading:", path);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        const auto end = line.find_last_not_of(" \t\r");
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(line.data() + start, line.data() + end + 1, v);
        if (ec != std::errc{} || ptr != line.data() + end + 1)
            throw gevind::IoError("malformed value '" + line + "' in", path);
        values.push_back(v);
    }
    return values;
}

// ---------------------------------------------------------------- commands

int cmd_sweep_k(const gevind::EnsembleConfig& ensemble, const gevind::SweepConfig& sweep,
                const std::string& out) {
    const fs::path dir = prepare_out_dir(out);
    const gevind::SweepResult result = gevind::run_ensemble_sweep(ensemble, sweep);
    gevind::write_records(result.records, dir / "records.csv");
    write_sweep_stats(result.stats, dir / "sweep_stats.csv");

    json cfg = {{"center", {ensemble.center.x, ensemble.center.y}},
                {"half_width", ensemble.half_width},
                {"count", ensemble.count},
                {"seed", ensemble.seed},
                {"k_values", sweep.k_values},
                {"blocks", blocks_json(sweep.blocks)},
                {"observables", observables_json(sweep.observables)},
                {"d_assumed", sweep.d_assumed},
                {"bootstrap_reps", sweep.bootstrap_reps},
                {"workers", sweep.workers}};
    write_manifest(dir, "sweep-k", cfg, {"records.csv", "sweep_stats.csv"});

    for (const auto& s : result.stats)
        if (s.kind == gevind::ObservableKind::G1)
            std::printf("K=%-12g mean xi=%+.4f sigma=%.4f  std xi=%.4f  failed=%.0f%%\n", s.K,
                        s.mean.xi, s.mean.sigma, s.stddev.xi, 100.0 * s.failed_fraction);
    return 0;
}

int cmd_scan(const gevind::GridScanConfig& config, const std::string& out, double threshold) {
    const fs::path dir = prepare_out_dir(out);
    const gevind::GridScanResult result = gevind::run_grid_scan(config);
    gevind::write_records(result.cells, dir / "records.csv");
    std::vector<std::string> outputs{"records.csv"};
    for (const std::string& name : scan_pixmaps(result, dir)) outputs.push_back(name);

    json cfg = {{"resolution", config.resolution},
                {"K", config.K},
                {"blocks", blocks_json(config.blocks)},
                {"observables", observables_json(config.observables)},
                {"roundoff_t", config.roundoff_t},
                {"d_assumed", config.d_assumed},
                {"seed", config.seed},
                {"bootstrap_reps", config.bootstrap_reps},
                {"workers", config.workers},
                {"threshold", threshold}};
    write_manifest(dir, "scan", cfg, outputs);
    print_scan_summary(result, threshold);
    return 0;
}

int cmd_binsize(const gevind::GridScanConfig& config, const std::vector<std::size_t>& m_values,
                const std::string& out, double threshold) {
    const fs::path dir = prepare_out_dir(out);
    const gevind::BinsizeStudyResult result = gevind::run_binsize_study(config, m_values);

    std::vector<std::string> outputs;
    for (std::size_t i = 0; i < result.grids.size(); ++i) {
        const fs::path sub = dir / ("m_" + std::to_string(result.m_values[i]));
        fs::create_directories(sub);
        gevind::write_records(result.grids[i].cells, sub / "records.csv");
        for (const std::string& name : scan_pixmaps(result.grids[i], sub))
            outputs.push_back(sub.filename().string() + "/" + name);
        outputs.push_back(sub.filename().string() + "/records.csv");
    }

    {
        const fs::path path = dir / "summary.csv";
        std::ofstream sum(path);
        if (!sum) throw gevind::IoError("cannot open for writing:", path);
        sum << "m,mean_abs_xi_dev_g1_sea,sea_cells\n";
        const auto sea_cells =
            std::count(result.sea_mask.begin(), result.sea_mask.end(), std::uint8_t{1});
        for (std::size_t i = 0; i < result.m_values.size(); ++i)
            sum << result.m_values[i] << ',' << format_double(result.mean_abs_xi_dev_g1[i])
                << ',' << sea_cells << '\n';
        if (!sum.flush()) throw gevind::IoError("write failed:", path);
        outputs.push_back("summary.csv");
    }

    json cfg = {{"resolution", config.resolution},
                {"K", config.K},
                {"bins", config.blocks.n},
                {"m_values", m_values},
                {"observables", observables_json(config.observables)},
                {"roundoff_t", config.roundoff_t},
                {"d_assumed", config.d_assumed},
                {"seed", config.seed},
                {"bootstrap_reps", config.bootstrap_reps},
                {"workers", config.workers},
                {"threshold", threshold},
                {"sea_threshold_log10_R", result.sea_threshold_log10_r}};
    write_manifest(dir, "binsize", cfg, outputs);

    for (std::size_t i = 0; i < result.m_values.size(); ++i)
        std::printf("m=%-8zu mean |xi'(g1) - theory| over chaotic sea: %.4f\n",
                    result.m_values[i], result.mean_abs_xi_dev_g1[i]);
    return 0;
}

int cmd_orbit(gevind::TorusPoint ic, double K, const gevind::BlockSpec& blocks,
              const std::vector<gevind::ObservableSpec>& observables, bool single_precision,
              const std::string& out) {
    const fs::path dir = prepare_out_dir(out);
    const gevind::Precision prec =
        single_precision ? gevind::Precision::Single : gevind::Precision::Double;
    const std::vector<gevind::TorusPoint> orbit =
        gevind::iterate(ic, {K}, prec, blocks.k);

    std::vector<gevind::ObservableSeries> series;
    for (const auto& spec : observables)
        series.push_back(gevind::observable_series(orbit, ic, spec));

    std::vector<std::string> outputs;
    {
        const fs::path path = dir / "series.csv";
        std::ofstream s(path);
        if (!s) throw gevind::IoError("cannot open for writing:", path);
        s << "t,x,y,distance";
        for (const auto& spec : observables) s << ',' << gevind::observable_name(spec.kind);
        s << '\n';
        for (std::size_t t = 0; t < orbit.size(); ++t) {
            s << (t + 1) << ',' << format_double(orbit[t].x) << ',' << format_double(orbit[t].y)
              << ',' << format_double(gevind::torus_distance(orbit[t], ic));
            for (const auto& sr : series) s << ',' << format_double(sr.values[t]);
            s << '\n';
        }
        if (!s.flush()) throw gevind::IoError("write failed:", path);
        outputs.push_back("series.csv");
    }

    for (std::size_t i = 0; i < observables.size(); ++i) {
        const gevind::MaximaSeries maxima = gevind::block_maxima(series[i], blocks);
        const std::string name =
            std::string("maxima_") + gevind::observable_name(observables[i].kind) + ".txt";
        const fs::path path = dir / name;
        std::ofstream mx(path);
        if (!mx) throw gevind::IoError("cannot open for writing:", path);
        mx << "# block maxima of " << gevind::observable_name(observables[i].kind) << ", n="
           << blocks.n << " m=" << blocks.m << ", clamped=" << maxima.exact_return_count << '\n';
        for (double v : maxima.values) mx << format_double(v) << '\n';
        if (!mx.flush()) throw gevind::IoError("write failed:", path);
        outputs.push_back(name);
    }

    {
        const std::vector<double> minima = gevind::min_distance_series(orbit, ic, blocks);
        const fs::path path = dir / "bin_min_distance.txt";
        std::ofstream md(path);
        if (!md) throw gevind::IoError("cannot open for writing:", path);
        md << "# per-bin minima of dist(f^t(ic), ic)\n";
        for (double v : minima) md << format_double(v) << '\n';
        if (!md.flush()) throw gevind::IoError("write failed:", path);
        outputs.push_back("bin_min_distance.txt");
    }

    json cfg = {{"ic", {ic.x, ic.y}},
                {"K", K},
                {"blocks", blocks_json(blocks)},
                {"observables", observables_json(observables)},
                {"precision", single_precision ? "single" : "double"}};
    write_manifest(dir, "orbit", cfg, outputs);
    return 0;
}

int cmd_fit(const std::string& input, const std::string& obs_name, double alpha, double c,
            std::size_t bootstrap_reps, std::uint64_t seed, std::optional<double> d,
            std::optional<std::size_t> bin_size) {
    const std::vector<double> values = read_values_file(input);
    if (values.size() < 50)
        std::fprintf(stderr, "warning: only %zu maxima; fits below n = 50 are unreliable\n",
                     values.size());
    auto kind = gevind::observable_from_name(obs_name);
    if (!kind) throw CLI::ValidationError("unknown observable '" + obs_name + "'");

    gevind::MaximaSeries maxima{values, 0, *kind};
    const gevind::FitResult fit = gevind::fit_gev(maxima, bootstrap_reps, seed);
    std::printf("n = %zu maxima, %zu bootstrap replicates (%.1f%% failed)\n", fit.sample_size,
                fit.bootstrap_reps, 100.0 * fit.failed_replicate_fraction);
    std::printf("mu    = %.6g   95%% CI [%.6g, %.6g]\n", fit.params.mu, fit.mu_ci.lower,
                fit.mu_ci.upper);
    std::printf("sigma = %.6g   95%% CI [%.6g, %.6g]\n", fit.params.sigma, fit.sigma_ci.lower,
                fit.sigma_ci.upper);
    std::printf("xi    = %.6g   95%% CI [%.6g, %.6g]\n", fit.params.xi, fit.xi_ci.lower,
                fit.xi_ci.upper);

    if (d) {
        const std::size_t m = bin_size.value_or(1000);
        const auto blocks = gevind::BlockSpec::from_bins(values.size(), m);
        const auto target = gevind::theoretical_params(*kind, *d, alpha, blocks, c);
        const auto dev = gevind::deviation_score(fit, target);
        std::printf("theory (d=%g): xi = %.6g", *d, target.expected.xi);
        if (target.sigma_comparable) std::printf(", sigma = %.6g", target.expected.sigma);
        if (target.mu_comparable) std::printf(", mu = %.6g", target.expected.mu);
        std::printf("\n|xi - theory| = %.6g (theory %s 95%% CI)\n", dev.xi,
                    dev.xi_in_ci ? "inside" : "outside");
        if (dev.sigma)
            std::printf("|sigma - theory| = %.6g (theory %s 95%% CI)\n", *dev.sigma,
                        *dev.sigma_in_ci ? "inside" : "outside");
        if (dev.mu)
            std::printf("|mu - theory| = %.6g (theory %s 95%% CI)\n", *dev.mu,
                        *dev.mu_in_ci ? "inside" : "outside");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GEV-based stability indicators for the standard map"};
    app.set_version_flag("--version", tool_version);
    app.require_subcommand(1);

    // sweep-k
    auto* sweep_cmd = app.add_subcommand(
        "sweep-k", "fit a fixed ensemble across a range of kick strengths K");
    gevind::EnsembleConfig ensemble;
    gevind::SweepConfig sweep;
    double k_min = 1e-4, k_max = 1e2;
    std::size_t k_count = 25;
    std::vector<double> k_list;
    BlockFlags sweep_blocks;
    ObservableFlags sweep_obs;
    std::string sweep_out = "sweep_out";
    sweep_cmd->add_option("--K", k_list, "explicit K values (overrides the log grid)")
        ->delimiter(',');
    sweep_cmd->add_option("--K-min", k_min, "low end of the log-spaced K grid");
    sweep_cmd->add_option("--K-max", k_max, "high end of the log-spaced K grid");
    sweep_cmd->add_option("--K-count", k_count, "points in the log-spaced K grid");
    sweep_cmd->add_option("--count", ensemble.count, "ensemble size")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--center-x", ensemble.center.x, "ensemble square center, x");
    sweep_cmd->add_option("--center-y", ensemble.center.y, "ensemble square center, y");
    sweep_cmd->add_option("--half-width", ensemble.half_width, "ensemble square half width");
    sweep_cmd->add_option("--seed", ensemble.seed, "master seed");
    sweep_cmd->add_option("--d", sweep.d_assumed, "assumed attractor dimension");
    sweep_cmd->add_option("--bootstrap-reps", sweep.bootstrap_reps,
                          "bootstrap replicates per fit (0 = point estimates)");
    sweep_cmd->add_option("--workers", sweep.workers, "worker threads (0 = all cores)");
    sweep_cmd->add_option("--out", sweep_out, "output directory");
    add_block_flags(sweep_cmd, sweep_blocks);
    add_observable_flags(sweep_cmd, sweep_obs);

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "indicator maps over a phase-space grid");
    gevind::GridScanConfig scan;
    BlockFlags scan_blocks;
    ObservableFlags scan_obs;
    std::string scan_out = "scan_out";
    double scan_threshold = 0.05;
    scan_cmd->add_option("--K", scan.K, "kick strength")->required();
    scan_cmd->add_option("--grid", scan.resolution, "grid points per axis");
    scan_cmd->add_option("--roundoff-t", scan.roundoff_t,
                         "iterations for the round-off indicators (0 = skip)");
    scan_cmd->add_option("--d", scan.d_assumed, "assumed attractor dimension");
    scan_cmd->add_option("--seed", scan.seed, "master seed");
    scan_cmd->add_option("--bootstrap-reps", scan.bootstrap_reps,
                         "bootstrap replicates per fit (0 = point estimates)");
    scan_cmd->add_option("--workers", scan.workers, "worker threads (0 = all cores)");
    scan_cmd->add_option("--threshold", scan_threshold, "|xi' - theory| chaotic threshold");
    scan_cmd->add_option("--out", scan_out, "output directory");
    add_block_flags(scan_cmd, scan_blocks);
    add_observable_flags(scan_cmd, scan_obs);

    // binsize
    auto* bin_cmd = app.add_subcommand(
        "binsize", "repeat a scan with fixed bin count and varying bin size");
    gevind::GridScanConfig bin_base;
    bin_base.resolution = 50;
    std::size_t bin_n = 1000;
    std::vector<std::size_t> m_values{1000, 10000};
    ObservableFlags bin_obs;
    std::string bin_out = "binsize_out";
    double bin_threshold = 0.05;
    bin_cmd->add_option("--K", bin_base.K, "kick strength")->required();
    bin_cmd->add_option("--grid", bin_base.resolution, "grid points per axis");
    bin_cmd->add_option("--bins", bin_n, "fixed number of bins n");
    bin_cmd->add_option("--m-values", m_values, "bin sizes m to compare")->delimiter(',');
    bin_cmd->add_option("--roundoff-t", bin_base.roundoff_t,
                        "iterations for the round-off indicators");
    bin_cmd->add_option("--d", bin_base.d_assumed, "assumed attractor dimension");
    bin_cmd->add_option("--seed", bin_base.seed, "master seed");
    bin_cmd->add_option("--bootstrap-reps", bin_base.bootstrap_reps,
                        "bootstrap replicates per fit (0 = point estimates)");
    bin_cmd->add_option("--workers", bin_base.workers, "worker threads (0 = all cores)");
    bin_cmd->add_option("--threshold", bin_threshold, "|xi' - theory| chaotic threshold");
    bin_cmd->add_option("--out", bin_out, "output directory");
    add_observable_flags(bin_cmd, bin_obs);

    // orbit
    auto* orbit_cmd = app.add_subcommand(
        "orbit", "dump one orbit's observable series, block maxima and bin minima");
    double orbit_x0 = 0.305, orbit_y0 = 0.7340, orbit_K = 6.5;
    BlockFlags orbit_blocks;
    ObservableFlags orbit_obs;
    bool orbit_single = false;
    std::string orbit_out = "orbit_out";
    orbit_cmd->add_option("--x0", orbit_x0, "initial x");
    orbit_cmd->add_option("--y0", orbit_y0, "initial y");
    orbit_cmd->add_option("--K", orbit_K, "kick strength")->required();
    orbit_cmd->add_flag("--single", orbit_single, "iterate in single precision");
    orbit_cmd->add_option("--out", orbit_out, "output directory");
    add_block_flags(orbit_cmd, orbit_blocks);
    add_observable_flags(orbit_cmd, orbit_obs);

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "fit a GEV to a maxima file (one value per line)");
    std::string fit_input, fit_obs = "g1";
    double fit_alpha = 3.0, fit_c = 0.0;
    std::size_t fit_reps = 1000;
    std::uint64_t fit_seed = 0;
    std::optional<double> fit_d;
    std::optional<std::size_t> fit_m;
    fit_cmd->add_option("--input", fit_input, "maxima file")->required();
    fit_cmd->add_option("--observables", fit_obs, "observable the maxima came from");
    fit_cmd->add_option("--alpha", fit_alpha, "exponent alpha of g2/g3");
    fit_cmd->add_option("--c", fit_c, "additive constant of g3");
    fit_cmd->add_option("--bootstrap-reps", fit_reps, "bootstrap replicates")
        ->check(CLI::PositiveNumber);
    fit_cmd->add_option("--seed", fit_seed, "bootstrap seed");
    fit_cmd->add_option("--d", fit_d, "attractor dimension for a theory comparison");
    fit_cmd->add_option("--bin-size", fit_m, "bin size m behind the maxima (for theory mu)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // config errors are exit 1
    }

    try {
        if (sweep_cmd->parsed()) {
            if (!k_list.empty())
                sweep.k_values = k_list;
            else
                sweep.k_values = gevind::log_spaced(k_min, k_max, k_count);
            sweep.blocks = resolve_blocks(sweep_blocks, 500, 1000);
            sweep.observables = resolve_observables(sweep_obs);
            return cmd_sweep_k(ensemble, sweep, sweep_out);
        }
        if (scan_cmd->parsed()) {
            scan.blocks = resolve_blocks(scan_blocks, 100, 1000);
            scan.observables = resolve_observables(scan_obs);
            return cmd_scan(scan, scan_out, scan_threshold);
        }
        if (bin_cmd->parsed()) {
            bin_base.blocks = gevind::BlockSpec::from_bins(bin_n, m_values.front());
            bin_base.observables = resolve_observables(bin_obs);
            return cmd_binsize(bin_base, m_values, bin_out, bin_threshold);
        }
        if (orbit_cmd->parsed()) {
            const auto blocks = resolve_blocks(orbit_blocks, 100, 100);
            return cmd_orbit({orbit_x0, orbit_y0}, orbit_K, blocks,
                             resolve_observables(orbit_obs), orbit_single, orbit_out);
        }
        if (fit_cmd->parsed())
            return cmd_fit(fit_input, fit_obs, fit_alpha, fit_c, fit_reps, fit_seed, fit_d,
                           fit_m);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const gevind::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
