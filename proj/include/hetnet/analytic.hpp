// Closed-form availability analysis: service areas, energy utilization, the
// availability fixed point and its feasibility condition.
#ifndef HETNET_ANALYTIC_HPP
#define HETNET_ANALYTIC_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "hetnet/markov.hpp"
#include "hetnet/model.hpp"

namespace hetnet {

/// E[X^{2/alpha}] for lognormal X:
///   exp((ln10/5) m/alpha + 0.5 ((ln10/5) sigma/alpha)^2).
double frac_moment(const ShadowingSpec& shadowing, double alpha);

/// Per-tier association weights w_k = E[X_k^{2/alpha}] P_k^{2/alpha}.
Eigen::VectorXd association_weights(const NetworkScenario& scenario);

/// Everything the availability maps need that does not depend on rho,
/// computed once: coverage, weights, and the effective demand P_c lambda_u.
class AvailabilityModel {
public:
    explicit AvailabilityModel(const NetworkScenario& scenario);

    const NetworkScenario& scenario() const noexcept { return scenario_; }
    std::size_t num_tiers() const noexcept { return scenario_.tiers.size(); }
    double coverage() const noexcept { return coverage_; }
    double effective_demand() const noexcept { return coverage_ * scenario_.user_density; }
    const Eigen::VectorXd& weights() const noexcept { return weights_; }

    /// sum_j rho_j lambda_j w_j
    double weighted_density(const Eigen::Ref<const Eigen::VectorXd>& rho) const;

    double mean_service_area(const Eigen::Ref<const Eigen::VectorXd>& rho, std::size_t k) const;
    double energy_utilization(const Eigen::Ref<const Eigen::VectorXd>& rho, std::size_t k) const;

    /// mu_k / nu_k; finite (zero) even when every tier is off.
    double load_ratio(const Eigen::Ref<const Eigen::VectorXd>& rho, std::size_t k) const;

    /// Availability of tier k under `policy` when the rest of the network is at rho.
    /// With cutoff 1 this is g_k.
    double availability_map(const Eigen::Ref<const Eigen::VectorXd>& rho, std::size_t k,
                            const PolicySpec& policy = {}) const;

    double g(const Eigen::Ref<const Eigen::VectorXd>& rho, std::size_t k) const {
        return availability_map(rho, k);
    }

private:
    NetworkScenario scenario_;
    Eigen::VectorXd weights_;
    Eigen::VectorXd densities_;
    double coverage_;
};

double mean_service_area(const NetworkScenario& scenario, const AvailabilityVector& rho,
                         std::size_t k);

/// nu_k = P_c lambda_u E[|A_k|].
double energy_utilization(const NetworkScenario& scenario, const AvailabilityVector& rho,
                          std::size_t k);

/// g_k(rho) = 1 - (1 - r_k)/(1 - r_k^{N_k+1}), r_k = mu_k/nu_k(rho).
/// Evaluated as 1 - 1/sum_{l=0}^{N_k} r_k^l, which is continuous through
/// r_k = 1 (value N/(N+1) there).
double g(const NetworkScenario& scenario, const AvailabilityVector& rho, std::size_t k);

struct FixedPointResult {
    AvailabilityVector rho;
    int iterations = 0;
    double residual = 0.0;
    bool feasible = false;
};

struct SolverOptions {
    double tolerance = 1e-10;
    int max_iter = 100000;
    /// Starting point; all ones when empty.
    std::optional<Eigen::VectorXd> initial;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(Eigen::VectorXd last_iterate, double residual, int iterations);

    const Eigen::VectorXd& last_iterate() const noexcept { return last_; }
    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    Eigen::VectorXd last_;
    double residual_;
    int iterations_;
};

/// Iterates rho <- Xi(rho) from the all-ones vector. Xi is increasing and
/// all-ones dominates every fixed point, so iterates decrease monotonically to
/// the largest fixed point. `policies` is per tier; empty means S(1) everywhere.
///
/// Returns feasible = false and rho = 0 when no positive fixed point exists.
/// Throws ConvergenceError when max_iter is reached first.
FixedPointResult solve_availability(const NetworkScenario& scenario,
                                    std::span<const PolicySpec> policies = {},
                                    const SolverOptions& options = {});

struct Feasibility {
    bool feasible = false;
    double gamma = 0.0;  // over-provisioning factor
};

/// gamma = sum_k lambda_k mu_k / (lambda_u P_c); feasible iff gamma > 1.
Feasibility check_feasibility(const NetworkScenario& scenario);

/// True iff mu_k sum_j rho_j lambda_j w_j / (rho_k P_c lambda_u w_k) > 1 for
/// every k. Requires rho strictly positive.
bool equivalence_check(const NetworkScenario& scenario, const AvailabilityVector& rho);

/// Lower bound on the fraction of users that must be dropped: max(0, 1 - gamma).
double energy_outage_bound(const NetworkScenario& scenario);

}  // namespace hetnet

#endif  // HETNET_ANALYTIC_HPP
