// Test-only reference computations. Nothing here calls into the closed forms
// under test.
#ifndef HETNET_TESTS_ORACLES_HPP
#define HETNET_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "hetnet/coverage.hpp"
#include "hetnet/markov.hpp"
#include "hetnet/model.hpp"

namespace oracle {

/// (-B)^{-1} by a dense LU solve in MPFR arithmetic, B built entry by entry.
/// The working precision grows with N |log10 r| so that the solve stays
/// accurate however badly conditioned the block is.
inline Eigen::MatrixXd dense_neg_b_inverse(double mu, double nu, int n) {
    using Real = boost::multiprecision::mpfr_float;
    using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
    const int digits = 40 + static_cast<int>(n * std::abs(std::log10(mu / nu)));
    boost::multiprecision::mpfr_float::default_precision(digits);
    Mat minus_b = Mat::Zero(n, n);
    const Real m(mu);
    const Real v(nu);
    for (int i = 0; i < n; ++i) {
        // level i + 1: death to level i (absorbing when i == 0), birth unless full
        minus_b(i, i) = (i + 1 < n) ? Real(m + v) : v;
        if (i + 1 < n) minus_b(i, i + 1) = -m;
        if (i > 0) minus_b(i, i - 1) = -v;
    }
    const Mat inv = minus_b.partialPivLu().solve(Mat::Identity(n, n));
    Eigen::MatrixXd out(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) out(i, j) = inv(i, j).convert_to<double>();
    }
    return out;
}

/// Mean hitting times of level 0 from every level via dense solve.
inline Eigen::VectorXd dense_hitting_times(double mu, double nu, int n) {
    return dense_neg_b_inverse(mu, nu, n).rowwise().sum();
}

/// Largest root of f on [lo, hi] assuming f(lo) > 0 > f(hi) and a single crossing.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double tol = 1e-14) {
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Gauss series for 2F1, |z| < 1.
inline double hyp2f1_series(double a, double b, double c, double z) {
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < 100000; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

/// Exact coverage for beta = 1 (0 dB), alpha = 4: 2F1(1, 1/2; 3/2; -1) = arctan(1).
inline double coverage_0db_alpha4() { return 1.0 / (1.0 + std::numbers::pi / 4.0); }

}  // namespace oracle

namespace fixtures {

/// Two-tier scenario with lambda_1 = 1; the user density is chosen so the
/// over-provisioning factor equals `gamma` at beta = 0 dB, alpha = 4.
inline hetnet::NetworkScenario two_tier(double lambda2, double mu1, double mu2, double p1,
                                        double p2, int n1, int n2, double gamma,
                                        hetnet::ShadowingSpec shadow = {}) {
    hetnet::NetworkScenario s;
    s.tiers = {{1.0, p1, mu1, n1, shadow}, {lambda2, p2, mu2, n2, shadow}};
    s.path_loss_exp = 4.0;
    s.sir_target = 1.0;
    s.user_density = (1.0 * mu1 + lambda2 * mu2) / (gamma * oracle::coverage_0db_alpha4());
    return s;
}

/// Availability-region setup: N = (10, 8), gamma = 1.1, mu = (2, 1),
/// lambda_2 = 10 lambda_1, equal shadowing. Powers (1, 0.1).
inline hetnet::NetworkScenario region_reference(hetnet::ShadowingSpec shadow = {}) {
    return two_tier(10.0, 2.0, 1.0, 1.0, 0.1, 10, 8, 1.1, shadow);
}

/// Constrained-region setup: N = (20, 15), mu = (15, 5), gamma = 1.1.
inline hetnet::NetworkScenario constrained_reference() {
    return two_tier(10.0, 15.0, 5.0, 1.0, 0.1, 20, 15, 1.1);
}

/// Battery sweep setup: P = (1, 0.1), mu = (10, 3), gamma = 1.1, N1 = N2 = n.
inline hetnet::NetworkScenario battery_sweep(int n) {
    return two_tier(10.0, 10.0, 3.0, 1.0, 0.1, n, n, 1.1);
}

/// Over-provisioning sweep setup: N = (20, 5), mu = (10, 3), P = (1, 0.1).
inline hetnet::NetworkScenario gamma_sweep(double gamma) {
    return two_tier(10.0, 10.0, 3.0, 1.0, 0.1, 20, 5, gamma);
}

/// Rate-surface setup: P = (1, 0.01), lambda_u = 100 lambda_1.
inline hetnet::NetworkScenario rate_surface(double lambda2) {
    hetnet::NetworkScenario s = two_tier(lambda2, 10.0, 3.0, 1.0, 0.01, 10, 10, 2.0);
    s.user_density = 100.0;
    return s;
}

/// Random feasible scenario: 1-4 tiers, shadowed, gamma in (1.02, 3.02).
inline hetnet::NetworkScenario random_scenario(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> tiers(1, 4);
    std::uniform_int_distribution<int> battery(1, 30);
    hetnet::NetworkScenario s;
    const int k = tiers(rng);
    double harvested = 0.0;
    for (int i = 0; i < k; ++i) {
        hetnet::TierParams t;
        t.density = std::exp(4.0 * u(rng) - 1.0);
        t.tx_power = std::exp(6.0 * u(rng) - 3.0);
        t.harvest_rate = std::exp(3.0 * u(rng) - 1.0);
        t.battery = battery(rng);
        t.shadowing = {6.0 * u(rng) - 3.0, 8.0 * u(rng)};
        harvested += t.density * t.harvest_rate;
        s.tiers.push_back(t);
    }
    s.path_loss_exp = 2.5 + 2.0 * u(rng);
    s.sir_target = std::exp(2.0 * u(rng) - 1.0);
    const double gamma = 1.02 + 2.0 * u(rng);
    s.user_density = harvested / (gamma * hetnet::coverage_prob(s));
    return s;
}

}  // namespace fixtures

#endif  // HETNET_TESTS_ORACLES_HPP
