// Spatial Monte Carlo for the K-tier network: thinned PPP base stations,
// PPP users, max-average-power association with per-link lognormal
// shadowing, Rayleigh fading in the SIR.
//
// These routines never call the closed-form coverage, area or rate code;
// they exist to check it.
#ifndef HETNET_SIMULATOR_HPP
#define HETNET_SIMULATOR_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "hetnet/estimate.hpp"
#include "hetnet/model.hpp"

namespace hetnet {

enum class BoundaryMode {
    toroidal,  // wrap-around distances on the square
    guard,     // Euclidean distances; only points at least `guard_margin` inside are measured
};

struct SimConfig {
    double window_side = 0.0;  // 0 selects suggest_window_side()
    int replicates = 20;
    std::uint64_t seed = 1;
    BoundaryMode boundary = BoundaryMode::toroidal;
    double guard_margin = 0.0;
    int max_users = 0;  // coverage_mc only: evaluate at most this many measured users per replicate; 0 = all
};

/// Throws std::invalid_argument on a non-positive side or replicate count, a
/// negative user cap, or a guard margin that is negative or not below half the side.
void validate(const SimConfig& config);

/// Side so that the sparsest non-empty tier expects at least `min_count` ON BSs.
double suggest_window_side(const NetworkScenario& scenario, const AvailabilityVector& rho,
                           double min_count = 100.0);

struct Realization {
    double side = 0.0;
    std::vector<Eigen::Matrix2Xd> tiers;  // ON base stations per tier
    Eigen::Matrix2Xd users;
};

struct ServingLink {
    int tier = -1;
    Eigen::Index index = -1;
    bool operator==(const ServingLink&) const = default;
};

/// Independent PPPs: tier k with density rho_k lambda_k, users with lambda_u.
Realization sample_network(const NetworkScenario& scenario, const AvailabilityVector& rho,
                           const SimConfig& config, std::mt19937_64& rng);

/// Serving BS of every user: argmax of P_k X ||x - z||^{-alpha} over all ON
/// BSs, with X drawn once per link. Throws std::domain_error when no BS is on.
std::vector<ServingLink> associate(const Realization& realization,
                                   const NetworkScenario& scenario, std::mt19937_64& rng,
                                   BoundaryMode boundary = BoundaryMode::toroidal);

/// E[|A_k|]: window area times the fraction of uniform probes served by
/// tier k, over the number of tier-k BSs, as a ratio of replicate sums.
/// Replicates without a tier-k BS are redrawn; their number goes to
/// `resampled` when provided.
SimEstimate service_area_mc(const NetworkScenario& scenario, const AvailabilityVector& rho,
                            std::size_t k, const SimConfig& config,
                            int probes_per_replicate = 2000, int* resampled = nullptr);

/// Fraction of users served by tier k.
SimEstimate association_mc(const NetworkScenario& scenario, const AvailabilityVector& rho,
                           std::size_t k, const SimConfig& config);

/// Fraction of users whose SIR at the serving BS exceeds the target.
/// Interference comes from every other ON BS, each with its own fading and
/// shadowing draw.
SimEstimate coverage_mc(const NetworkScenario& scenario, const AvailabilityVector& rho,
                        const SimConfig& config);

/// P(log2(1 + SIR)/Psi > T) where Psi is one plus the number of other
/// covered users (SIR > target) at the same BS.
SimEstimate rate_mc(const NetworkScenario& scenario, const AvailabilityVector& rho,
                    double rate_target, const SimConfig& config);

}  // namespace hetnet

#endif  // HETNET_SIMULATOR_HPP
