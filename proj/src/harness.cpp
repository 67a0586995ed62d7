#include "gevind/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gevind/parallel.hpp"
#include "gevind/rng.hpp"

namespace gevind {

void EnsembleConfig::validate() const {
    if (count < 1) throw std::invalid_argument("ensemble count must be >= 1");
    if (!(half_width > 0.0) || half_width > 0.5)
        throw std::invalid_argument("ensemble half_width must be in (0, 0.5]");
}

std::vector<TorusPoint> sample_ensemble(const EnsembleConfig& config) {
    config.validate();
    auto eng = make_engine(config.seed, 0x5a4d504cULL);  // ensemble-sampling stream
    std::vector<TorusPoint> points;
    points.reserve(config.count);
    for (std::size_t i = 0; i < config.count; ++i) {
        const double ux = 2.0 * uniform01(eng) - 1.0;
        const double uy = 2.0 * uniform01(eng) - 1.0;
        points.push_back({wrap_unit(config.center.x + config.half_width * ux),
                          wrap_unit(config.center.y + config.half_width * uy)});
    }
    return points;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
    if (count == 0) return {};
    if (count == 1) return {lo};
    std::vector<double> values(count);
    const double step = (std::log(hi) - std::log(lo)) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        values[i] = std::exp(std::log(lo) + step * static_cast<double>(i));
    values.front() = lo;
    values.back() = hi;
    return values;
}

std::vector<ObservableSpec> SweepConfig::default_observables() {
    return {{ObservableKind::G1, 3.0, 0.0, 1e-15},
            {ObservableKind::G2, 3.0, 0.0, 1e-15},
            {ObservableKind::G3, 3.0, 0.0, 1e-15}};
}

void SweepConfig::validate() const {
    if (k_values.empty()) throw std::invalid_argument("sweep needs at least one K value");
    for (double k : k_values)
        if (!(k >= 0.0) || !std::isfinite(k))
            throw std::invalid_argument("sweep K values must be finite and >= 0");
    blocks.validate();
    if (observables.empty()) throw std::invalid_argument("sweep needs at least one observable");
    for (const auto& o : observables) o.validate();
    if (!(d_assumed > 0.0)) throw std::invalid_argument("d_assumed must be > 0");
}

void GridScanConfig::validate() const {
    if (resolution < 2) throw std::invalid_argument("grid resolution must be >= 2");
    if (!std::isfinite(K) || K < 0.0)
        throw std::invalid_argument("K must be finite and >= 0");
    blocks.validate();
    if (observables.empty()) throw std::invalid_argument("scan needs at least one observable");
    for (const auto& o : observables) o.validate();
    if (!(d_assumed > 0.0)) throw std::invalid_argument("d_assumed must be > 0");
}

TorusPoint GridScanConfig::cell_center(std::size_t index) const {
    const std::size_t ix = index % resolution;
    const std::size_t iy = index / resolution;
    const double res = static_cast<double>(resolution);
    return {(static_cast<double>(ix) + 0.5) / res, (static_cast<double>(iy) + 0.5) / res};
}

namespace {

// Point fit without bootstrap: CI collapsed onto the estimate.
FitResult point_fit(const MaximaSeries& maxima) {
    FitResult out;
    out.params = gev_from_lmoments(sample_lmoments(maxima.values));
    out.mu_ci = {out.params.mu, out.params.mu};
    out.sigma_ci = {out.params.sigma, out.params.sigma};
    out.xi_ci = {out.params.xi, out.params.xi};
    out.sample_size = maxima.values.size();
    out.bootstrap_reps = 0;
    out.kind = maxima.kind;
    return out;
}

}  // namespace

IndicatorRecord evaluate_initial_condition(TorusPoint ic, double K, const BlockSpec& blocks,
                                           std::span<const ObservableSpec> observables,
                                           double d_assumed, std::size_t roundoff_t,
                                           std::size_t bootstrap_reps, std::uint64_t fit_seed) {
    const StandardMapParams params{K};
    IndicatorRecord record;
    record.ic = ic;
    record.K = K;

    const MapSystem map = make_standard_map(params, Precision::Double);
    double floor = 1e-15;
    for (const ObservableSpec& o : observables) floor = std::min(floor, o.distance_floor);
    const BinMinimaResult minima = orbit_bin_minima(map, ic, blocks, floor);

    record.observables.reserve(observables.size());
    for (std::size_t oi = 0; oi < observables.size(); ++oi) {
        const ObservableSpec& spec = observables[oi];
        ObservableResult result;
        result.kind = spec.kind;
        result.target = theoretical_params(spec, d_assumed, blocks);
        const MaximaSeries maxima = maxima_from_bin_minima(minima, spec);
        result.exact_returns = maxima.exact_return_count;
        try {
            result.fit = bootstrap_reps > 0
                             ? fit_gev(maxima, bootstrap_reps, splitmix64(fit_seed) + oi)
                             : point_fit(maxima);
            result.deviation = deviation_score(*result.fit, result.target);
            result.outcome = FitOutcome::Ok;
        } catch (const DegenerateSampleError&) {
            result.outcome = FitOutcome::Degenerate;
        } catch (const FitDomainError&) {
            result.outcome = FitOutcome::DomainError;
        }
        record.observables.push_back(std::move(result));
    }

    if (roundoff_t > 0) {
        const RoundoffResult ro = roundoff_indicators(ic, params, roundoff_t);
        record.divergence = ro.divergence;
        record.reversibility = ro.reversibility;
    }
    return record;
}

namespace {

GevParams ensemble_mean(std::span<const GevParams> fits) {
    GevParams mean{0.0, 0.0, 0.0};
    for (const GevParams& p : fits) {
        mean.mu += p.mu;
        mean.sigma += p.sigma;
        mean.xi += p.xi;
    }
    const double n = static_cast<double>(fits.size());
    return {mean.mu / n, mean.sigma / n, mean.xi / n};
}

GevParams ensemble_stddev(std::span<const GevParams> fits, const GevParams& mean) {
    GevParams var{0.0, 0.0, 0.0};
    for (const GevParams& p : fits) {
        var.mu += (p.mu - mean.mu) * (p.mu - mean.mu);
        var.sigma += (p.sigma - mean.sigma) * (p.sigma - mean.sigma);
        var.xi += (p.xi - mean.xi) * (p.xi - mean.xi);
    }
    const double n = static_cast<double>(fits.size());
    return {std::sqrt(var.mu / n), std::sqrt(var.sigma / n), std::sqrt(var.xi / n)};
}

}  // namespace

SweepResult run_ensemble_sweep(const EnsembleConfig& ensemble, const SweepConfig& sweep) {
    ensemble.validate();
    sweep.validate();
    const std::vector<TorusPoint> ics = sample_ensemble(ensemble);
    const std::size_t per_k = ics.size();
    const std::size_t total = per_k * sweep.k_values.size();

    SweepResult out;
    out.records.resize(total);
    parallel_for(0, total, sweep.workers, [&](std::size_t job) {
        const std::size_t ki = job / per_k;
        const std::size_t member = job % per_k;
        out.records[job] = evaluate_initial_condition(
            ics[member], sweep.k_values[ki], sweep.blocks, sweep.observables, sweep.d_assumed,
            /*roundoff_t=*/0, sweep.bootstrap_reps, splitmix64(ensemble.seed) ^ job);
    });

    for (std::size_t ki = 0; ki < sweep.k_values.size(); ++ki) {
        for (std::size_t oi = 0; oi < sweep.observables.size(); ++oi) {
            EnsembleStats stats;
            stats.K = sweep.k_values[ki];
            stats.kind = sweep.observables[oi].kind;
            std::vector<GevParams> fits;
            fits.reserve(per_k);
            for (std::size_t member = 0; member < per_k; ++member) {
                const ObservableResult& o = out.records[ki * per_k + member].observables[oi];
                if (o.outcome == FitOutcome::Ok) fits.push_back(o.fit->params);
            }
            stats.fits_ok = fits.size();
            stats.failed_fraction =
                static_cast<double>(per_k - fits.size()) / static_cast<double>(per_k);
            if (!fits.empty()) {
                stats.mean = ensemble_mean(fits);
                stats.stddev = ensemble_stddev(fits, stats.mean);
            } else {
                const double nan = std::numeric_limits<double>::quiet_NaN();
                stats.mean = {nan, nan, nan};
                stats.stddev = {nan, nan, nan};
            }
            out.stats.push_back(stats);
        }
    }
    return out;
}

GridScanResult run_grid_scan(const GridScanConfig& config) {
    config.validate();
    GridScanResult out;
    out.config = config;
    const std::size_t total = config.resolution * config.resolution;
    out.cells.resize(total);
    parallel_for(0, total, config.workers, [&](std::size_t cell) {
        out.cells[cell] = evaluate_initial_condition(
            config.cell_center(cell), config.K, config.blocks, config.observables,
            config.d_assumed, config.roundoff_t, config.bootstrap_reps,
            splitmix64(config.seed) ^ cell);
    });
    return out;
}

BinsizeStudyResult run_binsize_study(const GridScanConfig& config,
                                     std::span<const std::size_t> m_values) {
    if (m_values.empty()) throw std::invalid_argument("binsize study needs at least one m");
    if (config.roundoff_t == 0)
        throw std::invalid_argument("binsize study needs roundoff_t > 0 to classify the sea");

    BinsizeStudyResult out;
    out.m_values.assign(m_values.begin(), m_values.end());
    for (std::size_t m : m_values) {
        GridScanConfig cfg = config;
        cfg.blocks = BlockSpec::from_bins(config.blocks.n, m);
        out.grids.push_back(run_grid_scan(cfg));
    }

    // sea classification from the first grid's reversibility (identical in all)
    const std::vector<IndicatorRecord>& base = out.grids.front().cells;
    out.sea_mask.resize(base.size(), 0);
    for (std::size_t i = 0; i < base.size(); ++i) {
        const double r = base[i].reversibility.value_or(0.0);
        out.sea_mask[i] =
            std::log10(std::max(r, 1e-16)) >= out.sea_threshold_log10_r ? 1 : 0;
    }

    for (const GridScanResult& grid : out.grids) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < grid.cells.size(); ++i) {
            if (!out.sea_mask[i]) continue;
            for (const ObservableResult& o : grid.cells[i].observables) {
                if (o.kind != ObservableKind::G1 || !o.deviation) continue;
                sum += o.deviation->xi;
                ++count;
            }
        }
        out.mean_abs_xi_dev_g1.push_back(count > 0 ? sum / static_cast<double>(count)
                                                   : std::numeric_limits<double>::quiet_NaN());
    }
    return out;
}

}  // namespace gevind
