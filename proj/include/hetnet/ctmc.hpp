// Trajectory simulation of the energy chain under a recharge policy.
#ifndef HETNET_CTMC_HPP
#define HETNET_CTMC_HPP

#include <cstdint>

#include "hetnet/estimate.hpp"
#include "hetnet/markov.hpp"

namespace hetnet {

struct CycleStatistics {
    SimEstimate availability;   // fraction of time ON
    SimEstimate mean_on_time;   // per cycle
    SimEstimate mean_off_time;  // per cycle
    std::int64_t events = 0;
};

/// Gillespie simulation of `cycles` ON/OFF cycles. OFF: births only (rate mu)
/// until `policy.cutoff` units are stored. ON: births at mu below capacity and
/// deaths at nu until the battery is empty. Deterministic in `seed`.
CycleStatistics simulate_cycles(const BirthDeathSpec<double>& spec, const PolicySpec& policy,
                                std::int64_t cycles, std::uint64_t seed);

}  // namespace hetnet

#endif  // HETNET_CTMC_HPP
