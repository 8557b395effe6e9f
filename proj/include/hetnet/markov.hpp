// Birth-death energy chain of a single base station.
//
// Energy levels 0..N. While ON the level rises at the harvesting rate and
// falls at the utilization rate; the chain reflects at both ends. Under the
// recharge policy S(c) a BS that empties stays OFF until it has harvested c
// units, then serves again until it next empties.
//
// Everything here is templated on the scalar so the same routines can be
// evaluated in extended precision.
#ifndef HETNET_MARKOV_HPP
#define HETNET_MARKOV_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

namespace hetnet {

template <typename Scalar = double>
struct BirthDeathSpec {
    Scalar harvest_rate{1};      // birth rate
    Scalar utilization_rate{1};  // death rate
    int battery = 1;             // highest energy level

    Scalar ratio() const { return harvest_rate / utilization_rate; }
};

/// Recharge policy S(cutoff): after emptying, stay OFF until `cutoff` units
/// have been harvested. cutoff = 1 maximizes availability.
struct PolicySpec {
    int cutoff = 1;

    static PolicySpec recharge_one() { return {1}; }
    static PolicySpec full_recharge(int battery) { return {battery}; }
    bool operator==(const PolicySpec&) const = default;
};

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
void validate(const BirthDeathSpec<Scalar>& spec) {
    using std::isfinite;
    if (!(spec.harvest_rate > 0) || !isfinite(spec.harvest_rate)) {
        throw std::invalid_argument("harvest_rate must be positive");
    }
    if (!(spec.utilization_rate > 0) || !isfinite(spec.utilization_rate)) {
        throw std::invalid_argument("utilization_rate must be positive");
    }
    if (spec.battery < 1) {
        throw std::invalid_argument("battery must be at least 1");
    }
}

inline void validate(const PolicySpec& policy, int battery) {
    if (policy.cutoff < 1 || policy.cutoff > battery) {
        std::ostringstream os;
        os << "policy cutoff " << policy.cutoff << " outside [1, " << battery << "]";
        throw std::invalid_argument(os.str());
    }
}

namespace detail {

inline void check_level(int level, int battery, const char* what) {
    if (level < 1 || level > battery) {
        std::ostringstream os;
        os << what << " " << level << " outside [1, " << battery << "]";
        throw std::out_of_range(os.str());
    }
}

}  // namespace detail

/// Sum_{l=0}^{terms-1} r^l, accumulated term by term (no 1 - r denominator).
template <typename Scalar>
Scalar geometric_sum(Scalar r, int terms) {
    Scalar sum{0};
    for (int l = 0; l < terms; ++l) {
        sum = Scalar{1} + r * sum;
    }
    return sum;
}

/// Stationary probability of the empty state, 1 / sum_{l=0}^{N} r^l, for
/// r = harvest/utilization. Evaluated in the reciprocal ratio when r > 1 so
/// that large N cannot overflow.
template <typename Scalar>
Scalar empty_state_probability(Scalar r, int battery) {
    using std::pow;
    if (r <= Scalar{1}) {
        return Scalar{1} / geometric_sum(r, battery + 1);
    }
    const Scalar q = Scalar{1} / r;
    return pow(q, battery) / geometric_sum(q, battery + 1);
}

/// (N+1)x(N+1) generator, states in ascending energy level.
template <typename Scalar>
DenseMatrix<Scalar> generator(const BirthDeathSpec<Scalar>& spec) {
    validate(spec);
    const int n = spec.battery + 1;
    const Scalar mu = spec.harvest_rate;
    const Scalar nu = spec.utilization_rate;
    DenseMatrix<Scalar> q = DenseMatrix<Scalar>::Zero(n, n);
    for (int s = 0; s < n; ++s) {
        if (s + 1 < n) q(s, s + 1) = mu;
        if (s > 0) q(s, s - 1) = nu;
        q(s, s) = -q.row(s).sum();
    }
    return q;
}

/// Generator restricted to levels 1..N (first row and column removed).
template <typename Scalar>
DenseMatrix<Scalar> transient_block(const BirthDeathSpec<Scalar>& spec) {
    const DenseMatrix<Scalar> q = generator(spec);
    return q.bottomRightCorner(spec.battery, spec.battery);
}

template <typename Scalar>
DenseVector<Scalar> stationary(const BirthDeathSpec<Scalar>& spec) {
    validate(spec);
    using std::pow;
    const Scalar r = spec.ratio();
    const int n = spec.battery;
    DenseVector<Scalar> pi(n + 1);
    // pi_i proportional to r^i; normalize against the dominant end.
    if (r <= Scalar{1}) {
        for (int i = 0; i <= n; ++i) pi(i) = pow(r, i);
    } else {
        const Scalar q = Scalar{1} / r;
        for (int i = 0; i <= n; ++i) pi(i) = pow(q, n - i);
    }
    pi /= pi.sum();
    pi(0) = empty_state_probability(r, n);
    return pi;
}

/// Entry (i, j) of (-B)^{-1}, 1-based over levels 1..N:
///   nu^{-j} sum_{n=1}^{min(i,j)} mu^{j-n} nu^{n-1}
/// written in the ratio form r^{j-m} G_m / nu with G_m = sum_{l<m} r^l.
template <typename Scalar>
Scalar neg_b_inverse_entry(const BirthDeathSpec<Scalar>& spec, int i, int j) {
    validate(spec);
    detail::check_level(i, spec.battery, "row");
    detail::check_level(j, spec.battery, "column");
    using std::pow;
    const int m = std::min(i, j);
    const Scalar r = spec.ratio();
    return pow(r, j - m) * geometric_sum(r, m) / spec.utilization_rate;
}

template <typename Scalar>
DenseMatrix<Scalar> neg_b_inverse(const BirthDeathSpec<Scalar>& spec) {
    const int n = spec.battery;
    DenseMatrix<Scalar> m(n, n);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            m(i - 1, j - 1) = neg_b_inverse_entry(spec, i, j);
        }
    }
    return m;
}

/// Scaled on-time nu * E[J1(i)] = sum_{n=1}^{i} G_{N-n+1}: the row sum of
/// nu * (-B)^{-1}. Only depends on the ratio r.
template <typename Scalar>
Scalar scaled_on_time(Scalar r, int battery, int start_level) {
    const int lowest = battery - start_level + 1;
    Scalar g = geometric_sum(r, lowest);
    Scalar sum = g;
    for (int m = lowest + 1; m <= battery; ++m) {
        g = Scalar{1} + r * g;
        sum += g;
    }
    return sum;
}

/// Mean time to empty the battery starting from `start_level`.
template <typename Scalar>
Scalar mean_on_time(const BirthDeathSpec<Scalar>& spec, int start_level) {
    validate(spec);
    detail::check_level(start_level, spec.battery, "start level");
    return scaled_on_time(spec.ratio(), spec.battery, start_level) / spec.utilization_rate;
}

namespace detail {

// Near r = 1 both closed forms are 0/0. In eps = r - 1 they expand exactly as
//   G_N              = sum_k eps^k C(N, k+1)
//   sum_{m<=N} G_m   = sum_k eps^k C(N+1, k+2)
// and the series is used while |eps| N is small enough to converge quickly.
template <typename Scalar>
bool use_unit_ratio_series(Scalar r, int battery) {
    using std::abs;
    return abs(r - Scalar{1}) * Scalar(battery) < Scalar(1e-2);
}

template <typename Scalar>
Scalar binomial_eps_series(Scalar eps, Scalar first, int top, int offset) {
    // first = C(top, offset); term_{k+1} = term_k * eps * (top - offset - k) / (offset + k + 1)
    using std::abs;
    Scalar term = first;
    Scalar sum = first;
    for (int k = 0; top - offset - k > 0; ++k) {
        term *= eps * Scalar(top - offset - k) / Scalar(offset + k + 1);
        sum += term;
        if (abs(term) <= std::numeric_limits<Scalar>::epsilon() * abs(sum) * Scalar(1e-2)) {
            break;
        }
    }
    return sum;
}

}  // namespace detail

/// E[J1] for S(1) in the closed form (1/nu)(1 - r^N)/(1 - r).
template <typename Scalar>
Scalar policy1_mean_on_time(const BirthDeathSpec<Scalar>& spec) {
    validate(spec);
    using std::pow;
    const Scalar r = spec.ratio();
    const Scalar nu = spec.utilization_rate;
    const int n = spec.battery;
    if (detail::use_unit_ratio_series(r, n)) {
        return detail::binomial_eps_series(r - Scalar{1}, Scalar(n), n, 1) / nu;
    }
    return (Scalar{1} - pow(r, n)) / (Scalar{1} - r) / nu;
}

/// E[J1] for S(N) in the closed form
///   mu/(nu(mu - nu)) (1 - r^N)/(1 - r) - N/(mu - nu).
template <typename Scalar>
Scalar policy2_mean_on_time(const BirthDeathSpec<Scalar>& spec) {
    validate(spec);
    using std::pow;
    const Scalar mu = spec.harvest_rate;
    const Scalar nu = spec.utilization_rate;
    const Scalar r = spec.ratio();
    const int n = spec.battery;
    if (detail::use_unit_ratio_series(r, n)) {
        const Scalar first = Scalar(n) * Scalar(n + 1) / Scalar{2};
        return detail::binomial_eps_series(r - Scalar{1}, first, n + 1, 2) / nu;
    }
    return mu / (nu * (mu - nu)) * (Scalar{1} - pow(r, n)) / (Scalar{1} - r) -
           Scalar(n) / (mu - nu);
}

/// Availability E[J1]/(E[J1] + E[J2]) of S(cutoff) with E[J2] = cutoff/mu,
/// expressed through r = mu/nu alone: 1 / (1 + cutoff / (r * nu E[J1])).
template <typename Scalar>
Scalar availability_from_ratio(Scalar r, int battery, int cutoff) {
    using std::isfinite;
    if (r <= Scalar{0}) return Scalar{0};
    if (cutoff == 1) return Scalar{1} - empty_state_probability(r, battery);
    const Scalar on = r * scaled_on_time(r, battery, cutoff);
    if (!isfinite(on)) return Scalar{1};
    return on / (on + Scalar(cutoff));
}

template <typename Scalar>
Scalar policy_availability(const BirthDeathSpec<Scalar>& spec, const PolicySpec& policy) {
    validate(spec);
    validate(policy, spec.battery);
    return availability_from_ratio(spec.ratio(), spec.battery, policy.cutoff);
}

/// argmax over i in [1, N] of E[J1(i)]/i.
///
/// E[J1(i)]/i - E[J1(1)] = -(1/(i nu)) sum_{n=2}^{i} r^{N-n+1} G_{n-1}, so the
/// comparison is made on that difference, which carries its sign exactly even
/// when the ratios themselves agree to the last bit.
template <typename Scalar>
int verify_s1_optimal(const BirthDeathSpec<Scalar>& spec) {
    validate(spec);
    using std::pow;
    const Scalar r = spec.ratio();
    const int n = spec.battery;
    int best = 1;
    Scalar best_excess{0};
    Scalar deficit{0};
    Scalar g{0};  // G_{m-1}
    for (int i = 2; i <= n; ++i) {
        g = Scalar{1} + r * g;
        deficit += pow(r, n - i + 1) * g;
        const Scalar excess = -deficit / Scalar(i);
        if (excess > best_excess) {
            best_excess = excess;
            best = i;
        }
    }
    return best;
}

}  // namespace hetnet

#endif  // HETNET_MARKOV_HPP
