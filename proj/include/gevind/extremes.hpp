#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "gevind/dynamics.hpp"

namespace gevind {

/// Which distance observable to apply:
///   G1: -log d          (Gumbel-type maxima)
///   G2: d^(-1/alpha)    (Frechet-type)
///   G3: c - d^(1/alpha) (Weibull-type)
enum class ObservableKind { G1, G2, G3 };

const char* observable_name(ObservableKind kind);             // "g1" / "g2" / "g3"
std::optional<ObservableKind> observable_from_name(std::string_view name);

struct ObservableSpec {
    ObservableKind kind = ObservableKind::G1;
    double alpha = 3.0;   // exponent, > 0; used by G2/G3
    double c = 0.0;       // additive constant of G3
    /// Distances below this are clamped to it (and counted) instead of
    /// producing infinities on exact returns. Must be in (0, 1e-10].
    double distance_floor = 1e-15;

    void validate() const;  // throws std::invalid_argument
};

/// Blocking of a series of k observations into n bins of m each; k = n*m.
struct BlockSpec {
    std::size_t k = 0;
    std::size_t n = 0;
    std::size_t m = 0;

    static BlockSpec from_bins(std::size_t n, std::size_t m) { return {n * m, n, m}; }
    void validate() const;  // throws std::invalid_argument unless k == n*m, n,m >= 1
};

/// One maximum per bin, plus the number of clamped near-zero distances met
/// while the underlying series was built. kind records which observable
/// produced the series when known (raw block_maxima leaves it empty).
struct MaximaSeries {
    std::vector<double> values;
    std::size_t exact_return_count = 0;
    std::optional<ObservableKind> kind;
};

struct ObservableSeries {
    std::vector<double> values;
    std::size_t clamped = 0;  // distances below the floor
    ObservableKind kind = ObservableKind::G1;
};

/// g(d) for an already-clamped distance d > 0.
double observable_value(const ObservableSpec& spec, double distance);

/// Element t is g(dist(orbit[t], zeta)), with sub-floor distances clamped
/// and counted. The orbit is expected to start at the first iterate (the
/// zeroth would put g1/g2 at their singularity).
ObservableSeries observable_series(std::span<const TorusPoint> orbit, TorusPoint zeta,
                                   const ObservableSpec& spec);

/// Maximum over each of the n bins [j*m, (j+1)*m) of the first k entries.
/// Throws std::length_error when the series is shorter than blocks.k.
MaximaSeries block_maxima(std::span<const double> series, const BlockSpec& blocks);
MaximaSeries block_maxima(const ObservableSeries& series, const BlockSpec& blocks);

/// Per-bin minima of the raw distances dist(orbit[t], zeta) (no clamping):
/// the Nicolis diagnostic. For regular orbits its cdf stays piecewise
/// linear instead of converging to any extreme-value law.
std::vector<double> min_distance_series(std::span<const TorusPoint> orbit, TorusPoint zeta,
                                        const BlockSpec& blocks);

/// Streaming form of the series->maxima pipeline: iterates the map k times
/// and keeps only per-bin distance minima, so k = 10^6 never materializes
/// an orbit. exact returns are clamped to distance_floor and counted.
struct BinMinimaResult {
    std::vector<double> bin_min_distance;  // n entries, already clamped
    std::size_t clamped = 0;
};

BinMinimaResult orbit_bin_minima(const MapSystem& map, TorusPoint zeta,
                                 const BlockSpec& blocks, double distance_floor = 1e-15);

/// Bin maxima of g applied to the orbit, recovered from bin distance minima
/// (all three observables decrease in d, so max g = g(min d) per bin).
MaximaSeries maxima_from_bin_minima(const BinMinimaResult& minima,
                                    const ObservableSpec& spec);

}  // namespace gevind
