// Monte Carlo estimates with 99% confidence half-widths.
#ifndef HETNET_ESTIMATE_HPP
#define HETNET_ESTIMATE_HPP

#include <cstdint>
#include <random>
#include <span>

namespace hetnet {

struct SimEstimate {
    double mean = 0.0;
    double ci_halfwidth_99 = 0.0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;

    double lower() const { return mean - ci_halfwidth_99; }
    double upper() const { return mean + ci_halfwidth_99; }
    bool covers(double value) const { return value >= lower() && value <= upper(); }
};

/// Sample mean of i.i.d. observations with a Student-t 99% interval.
SimEstimate mean_estimate(std::span<const double> observations, std::uint64_t seed);

/// sum(numerators) / sum(denominators) over i.i.d. (numerator, denominator)
/// pairs, with a delta-method 99% interval. Used for renewal-reward ratios
/// and per-replicate spatial fractions.
SimEstimate ratio_estimate(std::span<const double> numerators,
                           std::span<const double> denominators, std::uint64_t seed);

/// Independent generator for stream `stream` of a run seeded with `seed`.
/// Streams are derived by SplitMix64 mixing, so replicate i always sees the
/// same draws no matter which thread runs it.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream);

}  // namespace hetnet

#endif  // HETNET_ESTIMATE_HPP
