#include <doctest.h>

#include <vector>

#include "hetnet/ctmc.hpp"
#include "hetnet/markov.hpp"

using namespace hetnet;

TEST_CASE("simulated cycles reproduce the renewal quantities") {
    struct Case {
        BirthDeathSpec<double> spec;
        PolicySpec policy;
    };
    const std::vector<Case> cases{
        {{2.0, 2.5, 10}, PolicySpec::recharge_one()},
        {{1.0, 0.6, 8}, PolicySpec::recharge_one()},
        {{1.0, 1.3, 12}, PolicySpec{4}},
        {{3.0, 3.0, 6}, PolicySpec::full_recharge(6)},
    };
    std::uint64_t seed = 100;
    for (const auto& c : cases) {
        const auto stats = simulate_cycles(c.spec, c.policy, 40000, ++seed);
        const double expected_on = mean_on_time(c.spec, c.policy.cutoff);
        const double expected_off = c.policy.cutoff / c.spec.harvest_rate;
        CAPTURE(seed);
        CHECK(stats.availability.covers(policy_availability(c.spec, c.policy)));
        CHECK(stats.mean_on_time.covers(expected_on));
        CHECK(stats.mean_off_time.covers(expected_off));
        CHECK(stats.availability.ci_halfwidth_99 < 0.02);
    }
}

TEST_CASE("cycle simulation is deterministic in the seed") {
    const BirthDeathSpec<double> spec{1.0, 1.2, 7};
    const auto a = simulate_cycles(spec, PolicySpec{}, 500, 42);
    const auto b = simulate_cycles(spec, PolicySpec{}, 500, 42);
    const auto c = simulate_cycles(spec, PolicySpec{}, 500, 43);
    CHECK(a.availability.mean == b.availability.mean);
    CHECK(a.events == b.events);
    CHECK(a.availability.mean != c.availability.mean);
    CHECK(a.availability.seed == 42);
}

TEST_CASE("interval shrinks with more cycles") {
    const BirthDeathSpec<double> spec{1.0, 1.2, 7};
    const auto small = simulate_cycles(spec, PolicySpec{}, 1000, 5);
    const auto large = simulate_cycles(spec, PolicySpec{}, 100000, 5);
    CHECK(large.availability.ci_halfwidth_99 < 0.2 * small.availability.ci_halfwidth_99);
}

TEST_CASE("cycle simulation argument checks") {
    const BirthDeathSpec<double> spec{1.0, 1.0, 3};
    CHECK_THROWS_AS(simulate_cycles(spec, PolicySpec{}, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulate_cycles(spec, PolicySpec{4}, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulate_cycles({0.0, 1.0, 3}, PolicySpec{}, 10, 1), std::invalid_argument);
}
