#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gevind/gev.hpp"

namespace gevind {

enum class FitOutcome { Ok, Degenerate, DomainError };
const char* fit_outcome_name(FitOutcome o);
std::optional<FitOutcome> fit_outcome_from_name(std::string_view name);

/// Everything the indicator produced for one observable at one initial
/// condition. fit and deviation are present exactly when outcome == Ok.
struct ObservableResult {
    ObservableKind kind = ObservableKind::G1;
    FitOutcome outcome = FitOutcome::Ok;
    std::optional<FitResult> fit;
    TheoreticalTarget target;
    std::optional<DeviationScore> deviation;
    std::size_t exact_returns = 0;
};

/// Per-initial-condition bundle: fits against theory for each observable,
/// plus the round-off indicators when the run computed them. Every record
/// carries either a fit or an explanatory failure status per observable.
struct IndicatorRecord {
    TorusPoint ic;
    double K = 0.0;
    std::vector<ObservableResult> observables;
    std::optional<double> divergence;
    std::optional<double> reversibility;
};

struct IoError : std::runtime_error {
    IoError(const std::string& action, const std::filesystem::path& path)
        : std::runtime_error(action + " " + path.string()) {}
};

/// Comma-delimited table, one row per record, header row naming every
/// field, missing values as empty cells. Doubles are written in shortest
/// round-trip form (std::to_chars), so write -> read -> write is a
/// byte-level fixpoint. Observable columns are prefixed g1_/g2_/g3_ in the
/// order the records carry them.
void write_records(std::span<const IndicatorRecord> records,
                   const std::filesystem::path& path);
std::vector<IndicatorRecord> read_records(const std::filesystem::path& path);

/// Scalar view of a record for heatmaps and summaries. Known fields:
///   xi_<o>, sigma_<o>, mu_<o>, dev_xi_<o>, dev_sigma_<o>, dev_mu_<o>,
///   exact_returns_<o>          for <o> in g1, g2, g3
///   log10_R, log10_div         (floored at 1e-16 for the log, display only)
///   divergence, reversibility  (raw values)
/// Returns NaN when the field is absent or the fit failed; throws
/// std::invalid_argument for unknown names.
double record_field(const IndicatorRecord& record, std::string_view field);

/// P3 (plain text) portable pixmap, one pixel per value, row-major with row
/// 0 at the bottom of the image. Finite values map onto a linear grayscale
/// ramp, black at the 2nd percentile of the finite values and white at the
/// 98th (clamped outside); non-finite values use a reserved red pixel.
void render_heatmap(std::span<const double> values, std::size_t width, std::size_t height,
                    const std::filesystem::path& path);

/// Extract `field` from a row-major grid of records and render it.
void render_heatmap(std::span<const IndicatorRecord> grid, std::size_t resolution,
                    std::string_view field, const std::filesystem::path& path);

}  // namespace gevind
