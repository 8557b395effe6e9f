#include "hetnet/ctmc.hpp"

#include <random>
#include <stdexcept>
#include <vector>

namespace hetnet {

CycleStatistics simulate_cycles(const BirthDeathSpec<double>& spec, const PolicySpec& policy,
                                std::int64_t cycles, std::uint64_t seed) {
    validate(spec);
    validate(policy, spec.battery);
    if (cycles < 2) throw std::invalid_argument("simulate_cycles: need at least two cycles");

    std::mt19937_64 rng = make_stream(seed, 0);
    std::exponential_distribution<double> harvest(spec.harvest_rate);
    std::exponential_distribution<double> any_event(spec.harvest_rate + spec.utilization_rate);
    std::exponential_distribution<double> drain(spec.utilization_rate);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double death_share = spec.utilization_rate / (spec.harvest_rate + spec.utilization_rate);

    const auto n = static_cast<std::size_t>(cycles);
    std::vector<double> on(n);
    std::vector<double> off(n);
    std::vector<double> period(n);
    std::int64_t events = 0;

    for (std::size_t c = 0; c < n; ++c) {
        double t_off = 0.0;
        for (int u = 0; u < policy.cutoff; ++u) t_off += harvest(rng);
        events += policy.cutoff;

        double t_on = 0.0;
        int level = policy.cutoff;
        while (level > 0) {
            if (level == spec.battery) {
                t_on += drain(rng);
                --level;
            } else {
                t_on += any_event(rng);
                level += (unit(rng) < death_share) ? -1 : 1;
            }
            ++events;
        }
        on[c] = t_on;
        off[c] = t_off;
        period[c] = t_on + t_off;
    }

    CycleStatistics stats;
    stats.availability = ratio_estimate(on, period, seed);
    stats.mean_on_time = mean_estimate(on, seed);
    stats.mean_off_time = mean_estimate(off, seed);
    stats.events = events;
    return stats;
}

}  // namespace hetnet
