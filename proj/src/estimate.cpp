#include "hetnet/estimate.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace hetnet {

namespace {

double t_quantile_99(std::size_t n) {
    if (n < 2) return 0.0;
    boost::math::students_t dist(static_cast<double>(n - 1));
    return boost::math::quantile(dist, 0.995);
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

SimEstimate mean_estimate(std::span<const double> observations, std::uint64_t seed) {
    const std::size_t n = observations.size();
    if (n == 0) throw std::invalid_argument("mean_estimate: no observations");
    double sum = 0.0;
    for (double x : observations) sum += x;
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double x : observations) ss += (x - mean) * (x - mean);
    double half = 0.0;
    if (n > 1) {
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        half = t_quantile_99(n) * sd / std::sqrt(static_cast<double>(n));
    }
    return {mean, half, static_cast<std::int64_t>(n), seed};
}

SimEstimate ratio_estimate(std::span<const double> numerators,
                           std::span<const double> denominators, std::uint64_t seed) {
    const std::size_t n = numerators.size();
    if (n == 0 || n != denominators.size()) {
        throw std::invalid_argument("ratio_estimate: need equally many numerators and denominators");
    }
    double sy = 0.0;
    double sx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sy += numerators[i];
        sx += denominators[i];
    }
    if (!(sx > 0.0)) throw std::domain_error("ratio_estimate: denominators sum to zero");
    const double ratio = sy / sx;
    double half = 0.0;
    if (n > 1) {
        const double xbar = sx / static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = numerators[i] - ratio * denominators[i];
            ss += d * d;
        }
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        half = t_quantile_99(n) * sd / (xbar * std::sqrt(static_cast<double>(n)));
    }
    return {ratio, half, static_cast<std::int64_t>(n), seed};
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed ^ (0xd1b54a32d192ed03ULL * (stream + 1));
    std::seed_seq seq{
        static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state)),
        static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state)),
        static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state)),
        static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state))};
    return std::mt19937_64(seq);
}

}  // namespace hetnet
