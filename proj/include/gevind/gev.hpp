#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>

#include "gevind/extremes.hpp"

namespace gevind {

/// GEV distribution parameters. The cdf is
///   F(x) = exp{ -[1 + xi (x - mu)/sigma]^(-1/xi) }   (xi != 0)
/// with the Gumbel limit exp{-exp(-(x-mu)/sigma)} as xi -> 0.
/// xi > 0 is Frechet (heavy upper tail), xi < 0 Weibull (bounded above).
struct GevParams {
    double mu = 0.0;
    double sigma = 1.0;
    double xi = 0.0;
};

/// First two L-moments and the L-skewness ratio tau3 = l3/l2.
struct LMoments {
    double l1 = 0.0;
    double l2 = 0.0;
    double tau3 = 0.0;
};

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
    bool contains(double v) const { return lower <= v && v <= upper; }
};

struct FitResult {
    GevParams params;
    Interval mu_ci, sigma_ci, xi_ci;  // percentile-bootstrap 95% intervals
    std::size_t sample_size = 0;
    std::size_t bootstrap_reps = 0;
    double failed_replicate_fraction = 0.0;
    std::optional<ObservableKind> kind;  // observable that produced the maxima
};

struct DegenerateSampleError : std::runtime_error {
    DegenerateSampleError() : std::runtime_error("degenerate sample: all values equal (l2 = 0)") {}
};

struct FitDomainError : std::runtime_error {
    explicit FitDomainError(const char* what) : std::runtime_error(what) {}
};

enum class FitStatus { Ok, TooSmall, Degenerate, DomainError };
const char* fit_status_name(FitStatus s);

/// Unbiased sample probability-weighted moments b0, b1, b2 of the
/// ascending-sorted sample, combined into l1 = b0, l2 = 2 b1 - b0,
/// tau3 = (6 b2 - 6 b1 + b0)/l2.
/// Throws std::invalid_argument for size < 3 or non-finite values,
/// DegenerateSampleError when l2 = 0.
LMoments sample_lmoments(std::span<const double> sample);

/// Hosking's rational-approximation estimator:
///   c  = 2/(3 + tau3) - ln 2 / ln 3
///   h  = 7.8590 c + 2.9554 c^2,      xi = -h
///   sigma = l2 h / ((1 - 2^-h) Gamma(1+h)),  mu = l1 - sigma (1 - Gamma(1+h))/h
/// with the Gumbel limit (sigma = l2/ln 2, mu = l1 - sigma*gamma_E) when
/// |h| < 1e-8. Throws FitDomainError when tau3 is outside (-1, 1) or
/// h <= -1 (Gamma argument would be non-positive).
GevParams gev_from_lmoments(const LMoments& lm);

/// noexcept duals used by bootstrap loops and by per-cell error handling.
FitStatus try_sample_lmoments(std::span<const double> sample, LMoments& out) noexcept;
FitStatus try_gev_from_lmoments(const LMoments& lm, GevParams& out) noexcept;

/// L-moments point estimate plus percentile-bootstrap confidence intervals
/// (resample size-n with replacement, refit, take the 2.5/97.5 percentiles
/// over the successful replicates). Replicate generators are derived from
/// (seed, replicate index), so the result is bit-identical for a fixed seed
/// regardless of scheduling. CIs are widened, if needed, to contain the
/// point estimate. bootstrap_reps >= 1.
FitResult fit_gev(const MaximaSeries& maxima, std::size_t bootstrap_reps, std::uint64_t seed);

double gev_cdf(double x, const GevParams& p);
/// Inverse cdf; u in (0, 1). Used for synthetic sampling.
double gev_quantile(double u, const GevParams& p);

/// First-order theoretical GEV parameters for block maxima of an observable
/// over an orbit equidistributed on a set of dimension d:
///   G1: sigma = 1/d, mu = (1/d) ln(k/n), xi = 0
///   G2: xi = +1/(alpha d); mu, sigma known only up to a scaling ~ n^(-1/(alpha d))
///   G3: xi = -1/(alpha d); mu = c; sigma known only up to scaling
struct TheoreticalTarget {
    ObservableKind kind = ObservableKind::G1;
    double d = 2.0;
    double alpha = 3.0;
    std::size_t k = 0;
    std::size_t n = 0;
    GevParams expected;     // entries meaningful per the flags below
    bool mu_comparable = false;
    bool sigma_comparable = false;  // xi is always comparable
};

TheoreticalTarget theoretical_params(ObservableKind kind, double d, double alpha,
                                     const BlockSpec& blocks, double c = 0.0);
TheoreticalTarget theoretical_params(const ObservableSpec& spec, double d,
                                     const BlockSpec& blocks);

/// Absolute deviations |fit - theory| for every comparable parameter, plus
/// whether the theory value falls inside the bootstrap CI. Scaling-only
/// entries are left empty. Throws FitDomainError("observable kind mismatch")
/// when fit and target disagree on the observable.
struct DeviationScore {
    double xi = 0.0;
    std::optional<double> sigma;
    std::optional<double> mu;
    bool xi_in_ci = false;
    std::optional<bool> sigma_in_ci;
    std::optional<bool> mu_in_ci;
};

DeviationScore deviation_score(const FitResult& fit, const TheoreticalTarget& target);

}  // namespace gevind
