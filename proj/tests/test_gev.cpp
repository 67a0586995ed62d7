#include <doctest.h>

#include <cmath>
#include <vector>

#include "gevind/gev.hpp"
#include "gevind/rng.hpp"
#include "oracles.hpp"

using namespace gevind;

namespace {

std::vector<double> sample_gev(std::size_t n, const GevParams& p, std::uint64_t seed,
                               std::uint64_t stream = 0) {
    auto eng = make_engine(seed, stream);
    std::vector<double> out(n);
    for (double& v : out) {
        double u;
        do {
            u = uniform01(eng);
        } while (u <= 0.0);
        v = gev_quantile(u, p);
    }
    return out;
}

}  // namespace

TEST_CASE("sample L-moments of {1,2,3}") {
    const LMoments lm = sample_lmoments(std::vector<double>{1.0, 2.0, 3.0});
    CHECK(lm.l1 == 2.0);
    CHECK(lm.l2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(lm.tau3 == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("degenerate and invalid samples") {
    CHECK_THROWS_AS(sample_lmoments(std::vector<double>(10, 3.14)), DegenerateSampleError);
    CHECK_THROWS_AS(sample_lmoments(std::vector<double>{1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(sample_lmoments(std::vector<double>{1.0, 2.0, std::nan("")}),
                    std::invalid_argument);
}

TEST_CASE("Gumbel Monte Carlo L-moments") {
    // population values: l1 = gamma_E, l2 = ln 2, tau3 = 2 ln3/ln2 - 3
    const auto draws = sample_gev(1000000, {0.0, 1.0, 0.0}, 2024);
    const LMoments lm = sample_lmoments(draws);
    CHECK(std::fabs(lm.l1 - 0.5772156649) <= 0.01);
    CHECK(std::fabs(lm.l2 - 0.6931471806) <= 0.01);
    CHECK(std::fabs(lm.tau3 - 0.1699248079) <= 0.01);
}

TEST_CASE("exact Gumbel L-moments map back to (0, 1, 0)") {
    const GevParams p =
        gev_from_lmoments({0.57721566490153286, 0.69314718055994531, 2.0 * std::log(3.0) / std::log(2.0) - 3.0});
    CHECK(std::fabs(p.mu) <= 1e-3);
    CHECK(std::fabs(p.sigma - 1.0) <= 1e-3);
    CHECK(std::fabs(p.xi) <= 1e-3);
}

TEST_CASE("Hosking approximation recovers parameters from population L-moments") {
    for (double xi : {-0.5, -0.3, -0.1, 0.0, 0.1, 0.15, 0.3, 0.5}) {
        const auto pop = oracles::gev_population_lmoments(0.0, 1.0, xi);
        const GevParams p = gev_from_lmoments({pop.l1, pop.l2, pop.tau3});
        CHECK(std::fabs(p.xi - xi) <= 1e-3);
        CHECK(std::fabs(p.sigma - 1.0) <= 3e-3);
        CHECK(std::fabs(p.mu) <= 1e-3);
    }
}

TEST_CASE("10^5-sample inverse-cdf round trip within 5% relative") {
    const GevParams truth{1.0, 2.0, 0.15};
    const auto draws = sample_gev(100000, truth, 77);
    const GevParams p = gev_from_lmoments(sample_lmoments(draws));
    CHECK(std::fabs(p.mu - truth.mu) <= 0.05 * truth.mu);
    CHECK(std::fabs(p.sigma - truth.sigma) <= 0.05 * truth.sigma);
    CHECK(std::fabs(p.xi - truth.xi) <= 0.05 * truth.xi);
}

TEST_CASE("tau3 near the boundary saturates without producing non-finite values") {
    LMoments lm{1.0, 0.5, 0.99999};
    GevParams p;
    const FitStatus st = try_gev_from_lmoments(lm, p);
    if (st == FitStatus::Ok) {
        CHECK(std::isfinite(p.mu));
        CHECK(std::isfinite(p.sigma));
        CHECK(std::isfinite(p.xi));
        CHECK(p.sigma > 0.0);
    }
    CHECK_THROWS_AS(gev_from_lmoments({1.0, 0.5, 1.5}), FitDomainError);
    CHECK_THROWS_AS(gev_from_lmoments({1.0, 0.5, -1.0}), FitDomainError);
}

TEST_CASE("location-scale equivariance and shape invariance") {
    const auto sample = sample_gev(500, {0.3, 1.3, 0.1}, 5);
    const GevParams base = gev_from_lmoments(sample_lmoments(sample));

    const double a = 2.5, b = -3.0;
    std::vector<double> transformed(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) transformed[i] = a * sample[i] + b;
    const GevParams t = gev_from_lmoments(sample_lmoments(transformed));

    CHECK(t.mu == doctest::Approx(a * base.mu + b).epsilon(1e-12));
    CHECK(t.sigma == doctest::Approx(a * base.sigma).epsilon(1e-12));
    CHECK(t.xi == doctest::Approx(base.xi).epsilon(1e-12));
}

TEST_CASE("fit_gev") {
    SUBCASE("n=1000 Gumbel sample: truth inside the CI, |xi| small") {
        MaximaSeries maxima{sample_gev(1000, {0.0, 1.0, 0.0}, 12), 0, ObservableKind::G1};
        const FitResult fit = fit_gev(maxima, 500, 99);
        CHECK(fit.xi_ci.contains(fit.params.xi));
        CHECK(fit.xi_ci.contains(0.0));
        CHECK(std::fabs(fit.params.xi) <= 0.05);
        CHECK(fit.params.sigma > 0.0);
        CHECK(fit.sample_size == 1000);
        CHECK(fit.kind == ObservableKind::G1);
    }
    SUBCASE("constant maxima raise the degenerate error") {
        MaximaSeries maxima{std::vector<double>(100, 4.2), 100, ObservableKind::G1};
        CHECK_THROWS_AS(fit_gev(maxima, 100, 1), DegenerateSampleError);
    }
    SUBCASE("bit-identical for a fixed seed") {
        MaximaSeries maxima{sample_gev(300, {2.0, 0.7, -0.1}, 8), 0, ObservableKind::G3};
        const FitResult a = fit_gev(maxima, 333, 2718);
        const FitResult b = fit_gev(maxima, 333, 2718);
        CHECK(a.params.mu == b.params.mu);
        CHECK(a.params.sigma == b.params.sigma);
        CHECK(a.params.xi == b.params.xi);
        CHECK(a.mu_ci.lower == b.mu_ci.lower);
        CHECK(a.mu_ci.upper == b.mu_ci.upper);
        CHECK(a.sigma_ci.lower == b.sigma_ci.lower);
        CHECK(a.sigma_ci.upper == b.sigma_ci.upper);
        CHECK(a.xi_ci.lower == b.xi_ci.lower);
        CHECK(a.xi_ci.upper == b.xi_ci.upper);
        CHECK(a.failed_replicate_fraction == b.failed_replicate_fraction);
    }
    SUBCASE("point estimate always inside its own CI") {
        for (std::uint64_t s = 0; s < 20; ++s) {
            MaximaSeries maxima{sample_gev(80, {0.0, 1.0, 0.2}, s, 1), 0, std::nullopt};
            const FitResult fit = fit_gev(maxima, 200, s);
            CHECK(fit.mu_ci.contains(fit.params.mu));
            CHECK(fit.sigma_ci.contains(fit.params.sigma));
            CHECK(fit.xi_ci.contains(fit.params.xi));
        }
    }
    SUBCASE("bootstrap_reps >= 1 is required") {
        MaximaSeries maxima{sample_gev(100, {0.0, 1.0, 0.0}, 1), 0, std::nullopt};
        CHECK_THROWS_AS(fit_gev(maxima, 0, 1), std::invalid_argument);
    }
}

TEST_CASE("bootstrap CI coverage for xi is at least 88% over 200 samples") {
    const GevParams truth{0.0, 1.0, 0.1};
    int covered = 0;
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        MaximaSeries maxima{sample_gev(1000, truth, 1000 + trial), 0, std::nullopt};
        const FitResult fit = fit_gev(maxima, 400, trial);
        if (fit.xi_ci.contains(truth.xi)) ++covered;
    }
    CHECK(covered >= 176);
}

TEST_CASE("gev cdf / quantile are inverse to each other") {
    for (const GevParams p : {GevParams{0, 1, 0}, GevParams{1, 2, 0.3}, GevParams{-1, 0.5, -0.25}}) {
        for (double u : {0.01, 0.1, 0.5, 0.9, 0.99}) {
            const double x = gev_quantile(u, p);
            CHECK(gev_cdf(x, p) == doctest::Approx(u).epsilon(1e-10));
        }
    }
    CHECK_THROWS_AS(gev_quantile(0.0, GevParams{}), std::invalid_argument);
    CHECK_THROWS_AS(gev_quantile(1.0, GevParams{}), std::invalid_argument);
}

TEST_CASE("theoretical parameters") {
    const BlockSpec blocks{1000000, 1000, 1000};

    SUBCASE("g1 at d = 2") {
        const TheoreticalTarget t = theoretical_params(ObservableKind::G1, 2.0, 3.0, blocks);
        CHECK(t.expected.sigma == 0.5);
        CHECK(t.expected.xi == 0.0);
        CHECK(t.expected.mu == doctest::Approx(3.4539).epsilon(1e-4));
        CHECK(t.expected.mu == std::log(1000.0) / 2.0);
        CHECK(t.mu_comparable);
        CHECK(t.sigma_comparable);
    }
    SUBCASE("g2 and g3 shapes at d = 2, alpha = 3") {
        const TheoreticalTarget t2 = theoretical_params(ObservableKind::G2, 2.0, 3.0, blocks);
        CHECK(t2.expected.xi == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
        CHECK(!t2.mu_comparable);
        CHECK(!t2.sigma_comparable);

        const TheoreticalTarget t3 =
            theoretical_params(ObservableKind::G3, 2.0, 3.0, blocks, 2.5);
        CHECK(t3.expected.xi == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));
        CHECK(t3.expected.mu == 2.5);  // mu = C
        CHECK(t3.mu_comparable);
        CHECK(!t3.sigma_comparable);
    }
    SUBCASE("invalid arguments") {
        CHECK_THROWS_AS(theoretical_params(ObservableKind::G1, 0.0, 3.0, blocks),
                        std::invalid_argument);
        CHECK_THROWS_AS(theoretical_params(ObservableKind::G2, 2.0, -1.0, blocks),
                        std::invalid_argument);
    }
}

TEST_CASE("deviation scores") {
    const BlockSpec blocks{500000, 500, 1000};
    const TheoreticalTarget target = theoretical_params(ObservableKind::G1, 2.0, 3.0, blocks);

    FitResult fit;
    fit.kind = ObservableKind::G1;

    SUBCASE("exact match scores zero with theory inside every CI") {
        fit.params = target.expected;
        fit.mu_ci = {fit.params.mu, fit.params.mu};
        fit.sigma_ci = {fit.params.sigma, fit.params.sigma};
        fit.xi_ci = {fit.params.xi, fit.params.xi};
        const DeviationScore s = deviation_score(fit, target);
        CHECK(s.xi == 0.0);
        CHECK(*s.sigma == 0.0);
        CHECK(*s.mu == 0.0);
        CHECK(s.xi_in_ci);
        CHECK(*s.sigma_in_ci);
        CHECK(*s.mu_in_ci);
    }
    SUBCASE("simple arithmetic") {
        fit.params = {target.expected.mu, 0.48, 0.03};
        fit.mu_ci = {0.0, 10.0};
        fit.sigma_ci = {0.40, 0.45};  // excludes 0.5
        fit.xi_ci = {-0.05, 0.06};
        const DeviationScore s = deviation_score(fit, target);
        CHECK(s.xi == doctest::Approx(0.03).epsilon(1e-15));
        CHECK(*s.sigma == doctest::Approx(0.02).epsilon(1e-12));
        CHECK(s.xi_in_ci);
        CHECK_FALSE(*s.sigma_in_ci);
    }
    SUBCASE("scaling-only entries stay empty") {
        const TheoreticalTarget t2 = theoretical_params(ObservableKind::G2, 2.0, 3.0, blocks);
        fit.kind = ObservableKind::G2;
        fit.params = {3.0, 1.0, 0.16};
        fit.xi_ci = {0.1, 0.2};
        const DeviationScore s = deviation_score(fit, t2);
        CHECK(!s.sigma.has_value());
        CHECK(!s.mu.has_value());
        CHECK(s.xi == doctest::Approx(0.16 - 1.0 / 6.0).epsilon(1e-10));
    }
    SUBCASE("kind mismatch throws") {
        fit.kind = ObservableKind::G2;
        CHECK_THROWS_AS(deviation_score(fit, target), FitDomainError);
    }
}
