#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "hetnet/coverage.hpp"
#include "oracles.hpp"

using namespace hetnet;

TEST_CASE("hypergeometric reduces to arctan") {
    // 2F1(1, 1/2; 3/2; -z^2) = arctan(z)/z
    for (const double z : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        CHECK(hyp2f1(1.0, 0.5, 1.5, -z * z) == doctest::Approx(std::atan(z) / z).epsilon(1e-12));
    }
}

TEST_CASE("hypergeometric agrees with the Gauss series inside the unit disc") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> alpha(2.2, 6.0);
    std::uniform_real_distribution<double> z(-0.9, 0.9);
    for (int i = 0; i < 200; ++i) {
        const double d = 2.0 / alpha(rng);
        const double x = z(rng);
        CHECK(hyp2f1(1.0, 1.0 - d, 2.0 - d, x) ==
              doctest::Approx(oracle::hyp2f1_series(1.0, 1.0 - d, 2.0 - d, x)).epsilon(1e-11));
    }
}

TEST_CASE("interference function reference values") {
    CHECK(hyper_f(1.0, 4.0) == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-12));
    CHECK(hyper_f(10.0, 4.0) == doctest::Approx(3.998760050557661).epsilon(1e-11));
    CHECK(hyper_f(0.1, 3.0) == doctest::Approx(0.1952671374379261).epsilon(1e-11));
    CHECK(hyper_f(1.0, 3.5) == doctest::Approx(1.073591141437388).epsilon(1e-11));
    CHECK(hyper_f(100.0, 5.0) == doctest::Approx(7.339720364788736).epsilon(1e-11));
    CHECK(hyper_f(0.0, 4.0) == 0.0);
}

TEST_CASE("interference function increases with the threshold") {
    for (const double alpha : {2.5, 3.0, 4.0, 6.0}) {
        double previous = 0.0;
        for (double beta = 1e-3; beta < 1e3; beta *= 1.7) {
            const double f = hyper_f(beta, alpha);
            CHECK(f > previous);
            previous = f;
        }
    }
}

TEST_CASE("coverage at 0 dB and alpha 4") {
    CHECK(std::abs(coverage_prob(1.0, 4.0) - oracle::coverage_0db_alpha4()) < 1e-10);
    CHECK(coverage_prob(1.0, 4.0) == doctest::Approx(0.5600991535115574).epsilon(1e-13));
}

TEST_CASE("coverage ignores densities, powers, shadowing and availability") {
    const auto a = fixtures::region_reference();
    auto b = fixtures::region_reference({4.0, 10.0});
    b.tiers[0].density = 0.3;
    b.tiers[1].tx_power = 5.0;
    b.user_density = 1234.0;
    CHECK(coverage_prob(a) == coverage_prob(b));
}

TEST_CASE("coverage limits") {
    CHECK(coverage_prob(0.0, 4.0) == 1.0);
    CHECK(coverage_prob(1e8, 4.0) < 1e-3);
    CHECK(coverage_prob(std::numeric_limits<double>::infinity(), 4.0) == 0.0);
    CHECK_THROWS_AS(hyper_f(-1.0, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(hyper_f(1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(hyp2f1(1.0, 0.5, 0.4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(hyp2f1(1.0, 0.5, 1.5, 1.0), std::invalid_argument);
}

TEST_CASE("tier association probabilities") {
    const auto s = fixtures::region_reference();
    const AvailabilityVector rho{0.3, 0.8};
    const double p0 = tier_association_prob(s, rho, 0);
    const double p1 = tier_association_prob(s, rho, 1);
    CHECK(p0 + p1 == doctest::Approx(1.0).epsilon(1e-15));
    // 0.3 * 1 * 1 vs 0.8 * 10 * sqrt(0.1)
    CHECK(p0 == doctest::Approx(0.3 / (0.3 + 8.0 * std::sqrt(0.1))).epsilon(1e-14));
    CHECK(tier_association_prob(s, AvailabilityVector{0.0, 0.5}, 1) == 1.0);
    CHECK_THROWS_AS(tier_association_prob(s, AvailabilityVector{0.0, 0.0}, 0), std::domain_error);
}

TEST_CASE("load pmf is normalized and size-biased") {
    for (const double x : {0.01, 0.5, 3.0, 25.0, 300.0}) {
        double mass = 0.0;
        double mean = 0.0;
        for (int n = 0; n < 200000; ++n) {
            const double p = load_pmf(n, x);
            mass += p;
            mean += n * p;
            if (n > 10 * x + 100 && p < 1e-18) break;
        }
        CAPTURE(x);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
        // other users seen from a tagged user: mean (4.5/3.5) x
        CHECK(mean == doctest::Approx(9.0 * x / 7.0).epsilon(1e-6));
    }
    CHECK(load_pmf(0, 0.0) == 1.0);
    CHECK(load_pmf(3, 0.0) == 0.0);
    CHECK(load_pmf(-1, 2.0) == 0.0);
    // small n against the direct gamma-function expression
    const double x = 1.7;
    for (int n = 0; n < 10; ++n) {
        const double direct = std::pow(3.5, 3.5) / std::tgamma(n + 1.0) * std::tgamma(n + 4.5) /
                              std::tgamma(3.5) * std::pow(x, n) * std::pow(3.5 + x, -(n + 4.5));
        CHECK(load_pmf(n, x) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("rate ccdf reference values") {
    RateQuery q;
    q.rate_target = 0.1;
    q.series_tolerance = 1e-12;
    q.max_terms = 5000;
    const auto s = fixtures::rate_surface(2.0);
    CHECK(rate_ccdf(s, AvailabilityVector{1.0, 1.0}, q) ==
          doctest::Approx(0.21229274545718981).epsilon(1e-9));
    CHECK(rate_ccdf(s, AvailabilityVector{0.5, 0.5}, q) ==
          doctest::Approx(0.11451396270214821).epsilon(1e-9));
    CHECK(rate_ccdf(s, AvailabilityVector{0.1, 1.0}, q) ==
          doctest::Approx(0.22276265500673543).epsilon(1e-9));

    NetworkScenario single;
    single.tiers = {{1.0, 1.0, 1.0, 5, {}}};
    single.user_density = 5.0;
    q.rate_target = 0.5;
    CHECK(rate_ccdf(single, AvailabilityVector{1.0}, q) ==
          doctest::Approx(0.36425353260674908).epsilon(1e-9));
}

TEST_CASE("rate ccdf shape") {
    const auto s = fixtures::rate_surface(20.0);
    const AvailabilityVector rho{0.6, 0.9};
    RateQuery q;
    CHECK(rate_ccdf(s, rho, q) == 1.0);
    double previous = 1.0;
    for (int i = 1; i <= 50; ++i) {
        q.rate_target = 0.02 * i;
        const double v = rate_ccdf(s, rho, q);
        CHECK(v <= previous);
        CHECK(v >= 0.0);
        previous = v;
    }
    q.rate_target = 50.0;
    CHECK(rate_ccdf(s, rho, q) < 1e-8);
}

TEST_CASE("rate ccdf is invariant to common shadowing") {
    auto plain = fixtures::rate_surface(2.0);
    auto shadowed = plain;
    for (auto& t : shadowed.tiers) t.shadowing = {1.0, 6.0};
    RateQuery q;
    q.rate_target = 0.3;
    const AvailabilityVector rho{0.4, 0.7};
    CHECK(std::abs(rate_ccdf(plain, rho, q) - rate_ccdf(shadowed, rho, q)) < 1e-10);
}

TEST_CASE("rate series truncation is reported") {
    RateQuery q;
    q.rate_target = 1e-4;
    q.max_terms = 3;
    q.series_tolerance = 1e-14;
    try {
        rate_ccdf(fixtures::rate_surface(2.0), AvailabilityVector{1.0, 1.0}, q);
        FAIL("expected SeriesTruncationError");
    } catch (const SeriesTruncationError& e) {
        CHECK(e.terms() == 3);
        CHECK(e.remainder_bound() > q.series_tolerance);
        CHECK(e.partial_sum() > 0.0);
    }
}
