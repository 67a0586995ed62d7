#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gevind/records.hpp"
#include "gevind/roundoff.hpp"

namespace gevind {

/// Initial conditions sampled uniformly from the square
/// [center - half_width, center + half_width]^2, wrapped onto the torus.
struct EnsembleConfig {
    TorusPoint center{0.305, 0.7340};
    double half_width = 5e-4;
    std::size_t count = 500;
    std::uint64_t seed = 0;

    void validate() const;
};

std::vector<TorusPoint> sample_ensemble(const EnsembleConfig& config);

/// Logarithmically spaced values from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, std::size_t count);

struct SweepConfig {
    std::vector<double> k_values = log_spaced(1e-4, 1e2, 25);
    BlockSpec blocks = BlockSpec::from_bins(500, 1000);
    std::vector<ObservableSpec> observables = default_observables();
    double d_assumed = 2.0;
    std::size_t bootstrap_reps = 200;  // 0 = point estimates only
    std::size_t workers = 0;           // 0 = hardware concurrency

    static std::vector<ObservableSpec> default_observables();
    void validate() const;
};

/// Ensemble mean and standard deviation of each fitted GEV parameter for
/// one (K, observable) pair. The std is the population one (count = 1
/// gives exactly 0); both are over the successful fits only.
struct EnsembleStats {
    double K = 0.0;
    ObservableKind kind = ObservableKind::G1;
    std::size_t fits_ok = 0;
    double failed_fraction = 0.0;
    GevParams mean;
    GevParams stddev;
};

struct SweepResult {
    std::vector<IndicatorRecord> records;  // K-major, then ensemble member
    std::vector<EnsembleStats> stats;      // K-major, then observable
};

/// Fit every ensemble member at every K and aggregate. Per-member failures
/// land in failed_fraction and the record statuses; the sweep never aborts
/// on them.
SweepResult run_ensemble_sweep(const EnsembleConfig& ensemble, const SweepConfig& sweep);

struct GridScanConfig {
    std::size_t resolution = 100;
    double K = 6.5;
    BlockSpec blocks = BlockSpec::from_bins(100, 1000);
    std::vector<ObservableSpec> observables = SweepConfig::default_observables();
    std::size_t roundoff_t = 100;  // 0 = skip the round-off indicators
    double d_assumed = 2.0;
    std::uint64_t seed = 0;
    std::size_t bootstrap_reps = 200;
    std::size_t workers = 0;

    void validate() const;
    /// Cell centers of the uniform lattice, row-major (iy * resolution + ix).
    TorusPoint cell_center(std::size_t index) const;
};

struct GridScanResult {
    GridScanConfig config;
    std::vector<IndicatorRecord> cells;  // row-major, resolution^2 entries
};

/// One record per lattice cell. Output ordering is row-major and, together
/// with all seeded randomness, independent of the worker count.
GridScanResult run_grid_scan(const GridScanConfig& config);

/// Repeat the scan with fixed bin count n and varying bin size m
/// (k = n*m each time), and report the mean |xi'(g1) - theory| over the
/// chaotic-sea cells per m. Sea cells are classified once from the
/// round-off indicator, which does not depend on m:
/// log10(max(R_t, 1e-16)) >= sea_threshold_log10_r.
struct BinsizeStudyResult {
    std::vector<std::size_t> m_values;
    std::vector<GridScanResult> grids;          // one per m
    std::vector<double> mean_abs_xi_dev_g1;     // one per m, over sea cells
    std::vector<std::uint8_t> sea_mask;         // resolution^2, 1 = chaotic sea
    double sea_threshold_log10_r = -3.0;
};

BinsizeStudyResult run_binsize_study(const GridScanConfig& config,
                                     std::span<const std::size_t> m_values);

/// Shared per-initial-condition pipeline: orbit -> bin minima -> per
/// observable maxima, fit, theory target and deviations; round-off
/// indicators when roundoff_t > 0. fit_seed feeds the bootstrap.
IndicatorRecord evaluate_initial_condition(TorusPoint ic, double K, const BlockSpec& blocks,
                                           std::span<const ObservableSpec> observables,
                                           double d_assumed, std::size_t roundoff_t,
                                           std::size_t bootstrap_reps, std::uint64_t fit_seed);

}  // namespace gevind
