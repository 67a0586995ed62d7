#include "gevind/gev.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gevind/rng.hpp"

namespace gevind {

namespace {
constexpr double euler_gamma = 0.57721566490153286061;
constexpr double ln2 = 0.69314718055994530942;
constexpr double ln3 = 1.09861228866810969140;
}  // namespace

const char* fit_status_name(FitStatus s) {
    switch (s) {
        case FitStatus::Ok: return "ok";
        case FitStatus::TooSmall: return "too_small";
        case FitStatus::Degenerate: return "degenerate";
        case FitStatus::DomainError: return "domain_error";
    }
    return "?";
}

namespace {

// PWMs of an ascending-sorted sample; b_r = (1/N) sum_j x_(j) prod_{i=1..r} (j-i)/(N-i).
FitStatus lmoments_sorted(const std::vector<double>& x, LMoments& out) noexcept {
    const std::size_t n = x.size();
    if (n < 3) return FitStatus::TooSmall;
    if (x.front() == x.back()) {  // constant sample, l2 = 0 exactly
        out = {x.front(), 0.0, 0.0};
        return FitStatus::Degenerate;
    }
    double b0 = 0.0, b1 = 0.0, b2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double v = x[j];
        b0 += v;
        b1 += v * static_cast<double>(j);
        b2 += v * static_cast<double>(j) * static_cast<double>(j > 0 ? j - 1 : 0);
    }
    const double N = static_cast<double>(n);
    b0 /= N;
    b1 /= N * (N - 1.0);
    b2 /= N * (N - 1.0) * (N - 2.0);
    out.l1 = b0;
    out.l2 = 2.0 * b1 - b0;
    const double l3 = 6.0 * b2 - 6.0 * b1 + b0;
    if (out.l2 <= 0.0) {  // numerically constant
        out.tau3 = 0.0;
        return FitStatus::Degenerate;
    }
    out.tau3 = l3 / out.l2;
    return FitStatus::Ok;
}

}  // namespace

FitStatus try_sample_lmoments(std::span<const double> sample, LMoments& out) noexcept {
    if (sample.size() < 3) return FitStatus::TooSmall;
    for (double v : sample)
        if (!std::isfinite(v)) return FitStatus::DomainError;
    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    return lmoments_sorted(x, out);
}

LMoments sample_lmoments(std::span<const double> sample) {
    if (sample.size() < 3)
        throw std::invalid_argument("sample_lmoments needs at least 3 values");
    LMoments lm;
    switch (try_sample_lmoments(sample, lm)) {
        case FitStatus::Ok: return lm;
        case FitStatus::Degenerate: throw DegenerateSampleError{};
        case FitStatus::DomainError:
            throw std::invalid_argument("sample contains non-finite values");
        case FitStatus::TooSmall:
            throw std::invalid_argument("sample_lmoments needs at least 3 values");
    }
    throw std::logic_error("unreachable");
}

FitStatus try_gev_from_lmoments(const LMoments& lm, GevParams& out) noexcept {
    if (!(lm.l2 > 0.0)) return lm.l2 == 0.0 ? FitStatus::Degenerate : FitStatus::DomainError;
    if (!(lm.tau3 > -1.0 && lm.tau3 < 1.0)) return FitStatus::DomainError;
    const double c = 2.0 / (3.0 + lm.tau3) - ln2 / ln3;
    const double h = 7.8590 * c + 2.9554 * c * c;
    out.xi = -h;
    if (std::fabs(h) < 1e-8) {
        out.sigma = lm.l2 / ln2;
        out.mu = lm.l1 - out.sigma * euler_gamma;
        return FitStatus::Ok;
    }
    if (h <= -1.0) return FitStatus::DomainError;
    const double gam = std::exp(std::lgamma(1.0 + h));
    // 1 - 2^-h computed as -expm1(-h ln 2) to survive small h
    const double one_minus_2mh = -std::expm1(-h * ln2);
    out.sigma = lm.l2 * h / (one_minus_2mh * gam);
    out.mu = lm.l1 - out.sigma * (1.0 - gam) / h;
    if (!std::isfinite(out.sigma) || !(out.sigma > 0.0) || !std::isfinite(out.mu))
        return FitStatus::DomainError;
    return FitStatus::Ok;
}

GevParams gev_from_lmoments(const LMoments& lm) {
    GevParams p;
    switch (try_gev_from_lmoments(lm, p)) {
        case FitStatus::Ok: return p;
        case FitStatus::Degenerate: throw DegenerateSampleError{};
        case FitStatus::DomainError: throw FitDomainError("L-moments outside the estimator's domain");
        case FitStatus::TooSmall: break;
    }
    throw std::logic_error("unreachable");
}

namespace {

double percentile_sorted(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) return 0.0;
    if (sorted.size() == 1) return sorted[0];
    const double idx = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(idx);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = idx - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

Interval percentile_ci(std::vector<double>& values, double point) {
    std::sort(values.begin(), values.end());
    Interval ci{percentile_sorted(values, 0.025), percentile_sorted(values, 0.975)};
    ci.lower = std::min(ci.lower, point);
    ci.upper = std::max(ci.upper, point);
    return ci;
}

}  // namespace

FitResult fit_gev(const MaximaSeries& maxima, std::size_t bootstrap_reps, std::uint64_t seed) {
    if (bootstrap_reps < 1)
        throw std::invalid_argument("fit_gev needs bootstrap_reps >= 1");
    const std::size_t n = maxima.values.size();

    LMoments lm = sample_lmoments(maxima.values);
    GevParams point = gev_from_lmoments(lm);

    std::vector<double> sorted(maxima.values.begin(), maxima.values.end());
    std::sort(sorted.begin(), sorted.end());

    std::vector<double> mus, sigmas, xis;
    mus.reserve(bootstrap_reps);
    sigmas.reserve(bootstrap_reps);
    xis.reserve(bootstrap_reps);
    std::vector<double> resample(n);
    std::size_t failed = 0;
    for (std::size_t rep = 0; rep < bootstrap_reps; ++rep) {
        auto eng = make_engine(seed, rep);
        for (std::size_t i = 0; i < n; ++i)
            resample[i] = sorted[uniform_below(eng, n)];
        std::sort(resample.begin(), resample.end());
        LMoments rlm;
        GevParams rp;
        if (lmoments_sorted(resample, rlm) == FitStatus::Ok &&
            try_gev_from_lmoments(rlm, rp) == FitStatus::Ok) {
            mus.push_back(rp.mu);
            sigmas.push_back(rp.sigma);
            xis.push_back(rp.xi);
        } else {
            ++failed;
        }
    }

    FitResult out;
    out.params = point;
    out.sample_size = n;
    out.bootstrap_reps = bootstrap_reps;
    out.failed_replicate_fraction =
        static_cast<double>(failed) / static_cast<double>(bootstrap_reps);
    out.kind = maxima.kind;
    out.mu_ci = percentile_ci(mus, point.mu);
    out.sigma_ci = percentile_ci(sigmas, point.sigma);
    out.xi_ci = percentile_ci(xis, point.xi);
    return out;
}

double gev_cdf(double x, const GevParams& p) {
    const double z = (x - p.mu) / p.sigma;
    if (p.xi == 0.0) return std::exp(-std::exp(-z));
    const double t = 1.0 + p.xi * z;
    if (t <= 0.0) return p.xi > 0.0 ? 0.0 : 1.0;
    return std::exp(-std::pow(t, -1.0 / p.xi));
}

double gev_quantile(double u, const GevParams& p) {
    if (!(u > 0.0 && u < 1.0))
        throw std::invalid_argument("gev_quantile needs u in (0, 1)");
    if (p.xi == 0.0) return p.mu - p.sigma * std::log(-std::log(u));
    return p.mu + p.sigma * (std::pow(-std::log(u), -p.xi) - 1.0) / p.xi;
}

TheoreticalTarget theoretical_params(ObservableKind kind, double d, double alpha,
                                     const BlockSpec& blocks, double c) {
    if (!(d > 0.0)) throw std::invalid_argument("dimension d must be > 0");
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
    blocks.validate();
    TheoreticalTarget t;
    t.kind = kind;
    t.d = d;
    t.alpha = alpha;
    t.k = blocks.k;
    t.n = blocks.n;
    switch (kind) {
        case ObservableKind::G1:
            t.expected.sigma = 1.0 / d;
            t.expected.mu = std::log(static_cast<double>(blocks.k) /
                                     static_cast<double>(blocks.n)) / d;
            t.expected.xi = 0.0;
            t.mu_comparable = true;
            t.sigma_comparable = true;
            break;
        case ObservableKind::G2:
            t.expected.xi = 1.0 / (alpha * d);
            t.mu_comparable = false;      // ~ n^(-1/(alpha d)), scaling only
            t.sigma_comparable = false;
            break;
        case ObservableKind::G3:
            t.expected.xi = -1.0 / (alpha * d);
            t.expected.mu = c;
            t.mu_comparable = true;
            t.sigma_comparable = false;   // ~ n^(-1/(alpha d)), scaling only
            break;
    }
    return t;
}

TheoreticalTarget theoretical_params(const ObservableSpec& spec, double d,
                                     const BlockSpec& blocks) {
    return theoretical_params(spec.kind, d, spec.alpha, blocks, spec.c);
}

DeviationScore deviation_score(const FitResult& fit, const TheoreticalTarget& target) {
    if (fit.kind && *fit.kind != target.kind)
        throw FitDomainError("observable kind mismatch between fit and target");
    DeviationScore s;
    s.xi = std::fabs(fit.params.xi - target.expected.xi);
    s.xi_in_ci = fit.xi_ci.contains(target.expected.xi);
    if (target.sigma_comparable) {
        s.sigma = std::fabs(fit.params.sigma - target.expected.sigma);
        s.sigma_in_ci = fit.sigma_ci.contains(target.expected.sigma);
    }
    if (target.mu_comparable) {
        s.mu = std::fabs(fit.params.mu - target.expected.mu);
        s.mu_in_ci = fit.mu_ci.contains(target.expected.mu);
    }
    return s;
}

}  // namespace gevind
