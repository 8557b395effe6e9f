// Availability region: the set of availability tuples reachable by
// uncoordinated ON/OFF strategies, described through the conditional
// boundaries rho_k*(rho_{-k}).
#ifndef HETNET_REGION_HPP
#define HETNET_REGION_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hetnet/analytic.hpp"
#include "hetnet/markov.hpp"
#include "hetnet/model.hpp"

namespace hetnet {

struct RegionBoundary {
    std::size_t tier = 0;
    /// (conditioning availability of the other tier, rho_k*) samples; K = 2 only.
    std::vector<std::pair<double, double>> samples;
    std::optional<PolicySpec> policy_constraint;
};

/// Largest rho_k in [0, 1] with rho_k = h_k(rho_k; others), where h_k is g_k,
/// or the availability of `constraint` when one is given. Zero when no
/// positive root exists. `others` holds the K-1 remaining availabilities in
/// tier order.
double boundary(const AvailabilityModel& model, std::size_t k,
                const Eigen::Ref<const Eigen::VectorXd>& others,
                const std::optional<PolicySpec>& constraint = std::nullopt);

double boundary(const NetworkScenario& scenario, std::size_t k,
                const AvailabilityVector& others,
                const std::optional<PolicySpec>& constraint = std::nullopt);

/// rho_k <= rho_k*(rho_{-k}) for every k. `policies` optionally constrains
/// tiers (empty = S(1) everywhere). Components above 1 are never contained.
/// Points within 1e-9 of a boundary count as inside.
bool contains(const AvailabilityModel& model, const Eigen::Ref<const Eigen::VectorXd>& rho,
              std::span<const PolicySpec> policies = {});

bool contains(const NetworkScenario& scenario, const AvailabilityVector& rho,
              std::span<const PolicySpec> policies = {});

/// Boundary of tier k sampled on `resolution` evenly spaced values of the
/// other tier's availability over [0, 1]. Requires K = 2.
RegionBoundary sweep_boundary(const NetworkScenario& scenario, std::size_t k,
                              int resolution = 101,
                              const std::optional<PolicySpec>& constraint = std::nullopt);

/// Fraction of the cell-centred resolution x resolution grid over [0, 1]^2
/// that lies in the region. Requires K = 2.
double region_area(const NetworkScenario& scenario, int resolution = 100,
                   std::span<const PolicySpec> policies = {});

}  // namespace hetnet

#endif  // HETNET_REGION_HPP
