#include "hetnet/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "hetnet/analytic.hpp"

namespace hetnet {

namespace {

constexpr double kQuadratureTolerance = 1e-12;

void require_alpha(double alpha) {
    if (!(alpha > 2.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("path loss exponent must exceed 2");
    }
}

}  // namespace

double hyp2f1(double a, double b, double c, double z) {
    if (!(c > b) || !(b > 0.0)) {
        throw std::invalid_argument("hyp2f1: Euler integral needs c > b > 0");
    }
    if (!(z < 1.0)) {
        throw std::invalid_argument("hyp2f1: Euler integral needs z < 1");
    }
    if (z == 0.0) return 1.0;

    // t^{b-1} and (1-t)^{c-b-1} may be singular at the ends. The second
    // argument is the signed distance to the nearer endpoint: -t on the left
    // half, 1 - t (free of cancellation) on the right.
    const auto integrand = [=](double t, double tc) {
        const double one_minus_t = tc > 0.0 ? tc : 1.0 - t;
        return std::pow(t, b - 1.0) * std::pow(one_minus_t, c - b - 1.0) *
               std::pow(1.0 - t * z, -a);
    };
    static thread_local boost::math::quadrature::tanh_sinh<double> integrator;
    double error = 0.0;
    double l1 = 0.0;
    const double integral = integrator.integrate(integrand, 0.0, 1.0,
                                                 kQuadratureTolerance, &error, &l1);
    const double prefactor =
        std::exp(std::lgamma(c) - std::lgamma(b) - std::lgamma(c - b));
    return prefactor * integral;
}

double hyper_f(double beta, double alpha) {
    require_alpha(alpha);
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("hyper_f: beta must be a non-negative finite number");
    }
    if (beta == 0.0) return 0.0;
    const double delta = 2.0 / alpha;
    return 2.0 * beta / (alpha - 2.0) * hyp2f1(1.0, 1.0 - delta, 2.0 - delta, -beta);
}

double coverage_prob(double beta, double alpha) {
    if (std::isinf(beta) && beta > 0.0) return 0.0;
    return 1.0 / (1.0 + hyper_f(beta, alpha));
}

double coverage_prob(const NetworkScenario& scenario) {
    validate(scenario);
    return coverage_prob(scenario.sir_target, scenario.path_loss_exp);
}

double tier_association_prob(const NetworkScenario& scenario, const AvailabilityVector& rho,
                             std::size_t k) {
    validate(scenario);
    const std::size_t tiers = scenario.num_tiers();
    if (static_cast<std::size_t>(rho.size()) != tiers || k >= tiers) {
        throw std::invalid_argument("tier_association_prob: tier index or availability size mismatch");
    }
    const Eigen::VectorXd w = association_weights(scenario);
    double total = 0.0;
    for (std::size_t j = 0; j < tiers; ++j) {
        total += rho[j] * scenario.tiers[j].density * w(j);
    }
    if (!(total > 0.0)) throw std::domain_error("no BS available");
    return rho[k] * scenario.tiers[k].density * w(k) / total;
}

double load_pmf(int n, double x) {
    if (n < 0) return 0.0;
    if (!(x >= 0.0)) throw std::invalid_argument("load_pmf: mean load must be non-negative");
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    constexpr double shape = 3.5;
    const double log_p = shape * std::log(shape) - std::lgamma(n + 1.0) +
                         std::lgamma(n + shape + 1.0) - std::lgamma(shape) +
                         n * std::log(x) - (n + shape + 1.0) * std::log(shape + x);
    return std::exp(log_p);
}

SeriesTruncationError::SeriesTruncationError(double partial_sum, double remainder_bound,
                                             int terms)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "rate series not converged after " << terms << " terms: partial sum "
             << partial_sum << ", remainder bound " << remainder_bound;
          return os.str();
      }()),
      partial_sum_(partial_sum),
      remainder_bound_(remainder_bound),
      terms_(terms) {}

double rate_ccdf(const NetworkScenario& scenario, const AvailabilityVector& rho,
                 const RateQuery& query) {
    validate(scenario);
    const std::size_t tiers = scenario.num_tiers();
    if (static_cast<std::size_t>(rho.size()) != tiers) {
        throw std::invalid_argument("rate_ccdf: availability size does not match tier count");
    }
    if (!(query.rate_target >= 0.0)) throw std::invalid_argument("rate_ccdf: rate target must be >= 0");
    if (!(query.series_tolerance > 0.0)) throw std::invalid_argument("rate_ccdf: series tolerance must be > 0");
    if (query.max_terms < 1) throw std::invalid_argument("rate_ccdf: max_terms must be >= 1");
    if (rho.all_zero()) throw std::domain_error("no BS available");

    // Every user clears a zero threshold and the load pmf sums to one.
    if (query.rate_target == 0.0) return 1.0;

    const double alpha = scenario.path_loss_exp;
    const double demand = coverage_prob(scenario) * scenario.user_density;

    std::vector<double> share;
    std::vector<double> load;
    for (std::size_t k = 0; k < tiers; ++k) {
        if (rho[k] == 0.0) continue;
        const double a = tier_association_prob(scenario, rho, k);
        share.push_back(a);
        load.push_back(demand * a / (rho[k] * scenario.tiers[k].density));
    }

    double total = 0.0;
    double mass = 0.0;
    double bound = 1.0;
    for (int n = 0; n < query.max_terms; ++n) {
        const double threshold = std::exp2(query.rate_target * (n + 1)) - 1.0;
        const double cov = coverage_prob(threshold, alpha);
        double term_mass = 0.0;
        for (std::size_t i = 0; i < share.size(); ++i) {
            term_mass += share[i] * load_pmf(n, load[i]);
        }
        total += cov * term_mass;
        mass += term_mass;
        bound = cov * std::max(0.0, 1.0 - mass);
        if (bound < query.series_tolerance) {
            return std::clamp(total, 0.0, 1.0);
        }
    }
    throw SeriesTruncationError(total, bound, query.max_terms);
}

}  // namespace hetnet
