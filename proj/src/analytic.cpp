#include "hetnet/analytic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hetnet/coverage.hpp"

namespace hetnet {

namespace {

void check_size(const NetworkScenario& scenario, Eigen::Index size) {
    if (static_cast<std::size_t>(size) != scenario.num_tiers()) {
        throw std::invalid_argument("availability vector size does not match tier count");
    }
}

void check_tier(const NetworkScenario& scenario, std::size_t k) {
    if (k >= scenario.num_tiers()) throw std::out_of_range("tier index out of range");
}

}  // namespace

double frac_moment(const ShadowingSpec& shadowing, double alpha) {
    if (!(alpha > 2.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("frac_moment: alpha must exceed 2");
    }
    if (!(shadowing.std_db >= 0.0)) {
        throw std::invalid_argument("frac_moment: shadowing std must be non-negative");
    }
    const double c = std::numbers::ln10 / 5.0;
    const double s = c * shadowing.std_db / alpha;
    return std::exp(c * shadowing.mean_db / alpha + 0.5 * s * s);
}

Eigen::VectorXd association_weights(const NetworkScenario& scenario) {
    const double alpha = scenario.path_loss_exp;
    Eigen::VectorXd w(static_cast<Eigen::Index>(scenario.num_tiers()));
    for (std::size_t k = 0; k < scenario.num_tiers(); ++k) {
        const TierParams& t = scenario.tiers[k];
        w(k) = frac_moment(t.shadowing, alpha) * std::pow(t.tx_power, 2.0 / alpha);
    }
    return w;
}

AvailabilityModel::AvailabilityModel(const NetworkScenario& scenario) : scenario_(scenario) {
    validate(scenario_);
    weights_ = association_weights(scenario_);
    densities_.resize(static_cast<Eigen::Index>(scenario_.num_tiers()));
    for (std::size_t k = 0; k < scenario_.num_tiers(); ++k) {
        densities_(k) = scenario_.tiers[k].density;
    }
    coverage_ = coverage_prob(scenario_.sir_target, scenario_.path_loss_exp);
}

double AvailabilityModel::weighted_density(const Eigen::Ref<const Eigen::VectorXd>& rho) const {
    check_size(scenario_, rho.size());
    return (rho.array() * densities_.array() * weights_.array()).sum();
}

double AvailabilityModel::mean_service_area(const Eigen::Ref<const Eigen::VectorXd>& rho,
                                            std::size_t k) const {
    check_tier(scenario_, k);
    const double total = weighted_density(rho);
    if (!(total > 0.0)) throw std::domain_error("no BS available");
    return weights_(k) / total;
}

double AvailabilityModel::energy_utilization(const Eigen::Ref<const Eigen::VectorXd>& rho,
                                             std::size_t k) const {
    return effective_demand() * mean_service_area(rho, k);
}

double AvailabilityModel::load_ratio(const Eigen::Ref<const Eigen::VectorXd>& rho,
                                     std::size_t k) const {
    check_tier(scenario_, k);
    return scenario_.tiers[k].harvest_rate * weighted_density(rho) /
           (effective_demand() * weights_(k));
}

double AvailabilityModel::availability_map(const Eigen::Ref<const Eigen::VectorXd>& rho,
                                           std::size_t k, const PolicySpec& policy) const {
    check_tier(scenario_, k);
    const int battery = scenario_.tiers[k].battery;
    validate(policy, battery);
    return availability_from_ratio(load_ratio(rho, k), battery, policy.cutoff);
}

double mean_service_area(const NetworkScenario& scenario, const AvailabilityVector& rho,
                         std::size_t k) {
    return AvailabilityModel(scenario).mean_service_area(rho.values(), k);
}

double energy_utilization(const NetworkScenario& scenario, const AvailabilityVector& rho,
                          std::size_t k) {
    return AvailabilityModel(scenario).energy_utilization(rho.values(), k);
}

double g(const NetworkScenario& scenario, const AvailabilityVector& rho, std::size_t k) {
    return AvailabilityModel(scenario).g(rho.values(), k);
}

ConvergenceError::ConvergenceError(Eigen::VectorXd last_iterate, double residual,
                                   int iterations)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "availability fixed point not reached after " << iterations
             << " iterations (residual " << residual << ")";
          return os.str();
      }()),
      last_(std::move(last_iterate)),
      residual_(residual),
      iterations_(iterations) {}

Feasibility check_feasibility(const NetworkScenario& scenario) {
    validate(scenario);
    double harvested = 0.0;
    for (const TierParams& t : scenario.tiers) harvested += t.density * t.harvest_rate;
    const double demand = scenario.user_density * coverage_prob(scenario);
    const double gamma = harvested / demand;
    return {gamma > 1.0, gamma};
}

FixedPointResult solve_availability(const NetworkScenario& scenario,
                                    std::span<const PolicySpec> policies,
                                    const SolverOptions& options) {
    const AvailabilityModel model(scenario);
    const std::size_t tiers = model.num_tiers();
    const auto n = static_cast<Eigen::Index>(tiers);

    std::vector<PolicySpec> policy(tiers);
    if (!policies.empty()) {
        if (policies.size() != tiers) {
            throw std::invalid_argument("solve_availability: one policy per tier required");
        }
        policy.assign(policies.begin(), policies.end());
    }
    bool recharge_one = true;
    for (std::size_t k = 0; k < tiers; ++k) {
        validate(policy[k], scenario.tiers[k].battery);
        recharge_one = recharge_one && policy[k].cutoff == 1;
    }
    if (!(options.tolerance > 0.0) || options.max_iter < 1) {
        throw std::invalid_argument("solve_availability: tolerance and max_iter must be positive");
    }

    const Feasibility feasibility = check_feasibility(scenario);
    if (recharge_one && !feasibility.feasible) {
        return {AvailabilityVector::zeros(n), 0, 0.0, false};
    }

    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    if (options.initial) {
        check_size(scenario, options.initial->size());
        x = AvailabilityVector(*options.initial).values();
    }
    Eigen::VectorXd next(n);
    double residual = 0.0;
    for (int it = 1; it <= options.max_iter; ++it) {
        for (std::size_t k = 0; k < tiers; ++k) {
            next(k) = model.availability_map(x, k, policy[k]);
        }
        residual = (next - x).cwiseAbs().maxCoeff();
        if (residual <= options.tolerance) {
            // Under S(1) everywhere a positive root exists iff gamma > 1, and
            // that has been established. Mixed policies have no such
            // criterion, so a collapse towards zero marks infeasibility.
            const bool positive =
                recharge_one || x.minCoeff() > std::sqrt(options.tolerance);
            if (!positive) return {AvailabilityVector::zeros(n), it, 0.0, false};
            return {AvailabilityVector(x), it, residual, true};
        }
        x = next;
    }
    throw ConvergenceError(x, residual, options.max_iter);
}

bool equivalence_check(const NetworkScenario& scenario, const AvailabilityVector& rho) {
    const AvailabilityModel model(scenario);
    check_size(scenario, rho.size());
    if ((rho.values().array() <= 0.0).any()) {
        throw std::invalid_argument("equivalence_check: availabilities must be strictly positive");
    }
    for (std::size_t k = 0; k < model.num_tiers(); ++k) {
        if (!(model.load_ratio(rho.values(), k) / rho[k] > 1.0)) return false;
    }
    return true;
}

double energy_outage_bound(const NetworkScenario& scenario) {
    return std::max(0.0, 1.0 - check_feasibility(scenario).gamma);
}

}  // namespace hetnet
