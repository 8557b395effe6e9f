// SIR coverage and downlink rate coverage in the interference-limited regime.
#ifndef HETNET_COVERAGE_HPP
#define HETNET_COVERAGE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

#include "hetnet/model.hpp"

namespace hetnet {

/// Gauss hypergeometric 2F1(a, b; c; z) from its Euler integral
///   Gamma(c)/(Gamma(b)Gamma(c-b)) int_0^1 t^{b-1}(1-t)^{c-b-1}(1-tz)^{-a} dt.
/// Requires c > b > 0 and z < 1. Absolute quadrature tolerance 1e-12.
double hyp2f1(double a, double b, double c, double z);

/// F(beta, alpha) = 2 beta/(alpha - 2) 2F1(1, 1 - 2/alpha; 2 - 2/alpha; -beta).
/// F(0, alpha) = 0.
double hyper_f(double beta, double alpha);

/// P(SIR > beta) = 1/(1 + F(beta, alpha)).
double coverage_prob(double beta, double alpha);

/// Coverage of the scenario. Does not depend on densities, powers,
/// shadowing or availabilities.
double coverage_prob(const NetworkScenario& scenario);

/// Probability that a typical user is served by tier k:
///   rho_k lambda_k w_k / sum_j rho_j lambda_j w_j, w_j = E[X_j^{2/alpha}] P_j^{2/alpha}.
double tier_association_prob(const NetworkScenario& scenario, const AvailabilityVector& rho,
                             std::size_t k);

/// Approximate pmf of the number of other users sharing the tagged user's BS
/// when the mean load is x:
///   3.5^{3.5}/n! Gamma(n+4.5)/Gamma(3.5) x^n (3.5+x)^{-(n+4.5)}.
/// Evaluated in log space.
double load_pmf(int n, double x);

struct RateQuery {
    double rate_target = 0.0;  // bps/Hz
    double series_tolerance = 1e-8;
    int max_terms = 500;
};

/// The outer series did not reach `series_tolerance` within `max_terms`.
class SeriesTruncationError : public std::runtime_error {
public:
    SeriesTruncationError(double partial_sum, double remainder_bound, int terms);

    double partial_sum() const noexcept { return partial_sum_; }
    double remainder_bound() const noexcept { return remainder_bound_; }
    int terms() const noexcept { return terms_; }

private:
    double partial_sum_;
    double remainder_bound_;
    int terms_;
};

/// P(R > T) for R = log2(1 + SIR)/Psi under equal resource sharing:
///   sum_n P_c(2^{T(n+1)} - 1) sum_k A_k pmf_n(P_c lambda_u A_k / (rho_k lambda_k)).
/// Summation stops once P_c(beta_{n+1}) times the load mass not yet summed
/// is below the tolerance; that product bounds the remaining tail.
double rate_ccdf(const NetworkScenario& scenario, const AvailabilityVector& rho,
                 const RateQuery& query);

}  // namespace hetnet

#endif  // HETNET_COVERAGE_HPP
