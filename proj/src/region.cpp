#include "hetnet/region.hpp"

#include <stdexcept>

#include "hetnet/parallel.hpp"

namespace hetnet {

namespace {

constexpr double kLowerEdge = 1e-12;
constexpr double kBisectionTolerance = 1e-10;
constexpr int kBracketSteps = 64;
// Boundary points are inside (the region is closed); both the boundary and a
// solved fixed point are only known to about 1e-10.
constexpr double kContainsSlack = 1e-9;

void require_two_tiers(const NetworkScenario& scenario) {
    if (scenario.num_tiers() != 2) {
        throw std::invalid_argument("region sweeps are defined for two tiers only");
    }
}

Eigen::VectorXd insert_at(const Eigen::Ref<const Eigen::VectorXd>& others, std::size_t k,
                          double value) {
    const auto n = others.size() + 1;
    Eigen::VectorXd full(n);
    Eigen::Index src = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        full(j) = (static_cast<std::size_t>(j) == k) ? value : others(src++);
    }
    return full;
}

}  // namespace

double boundary(const AvailabilityModel& model, std::size_t k,
                const Eigen::Ref<const Eigen::VectorXd>& others,
                const std::optional<PolicySpec>& constraint) {
    if (k >= model.num_tiers()) throw std::out_of_range("boundary: tier index out of range");
    if (static_cast<std::size_t>(others.size()) + 1 != model.num_tiers()) {
        throw std::invalid_argument("boundary: expected K-1 conditioning availabilities");
    }
    const PolicySpec policy = constraint.value_or(PolicySpec{});
    Eigen::VectorXd rho = insert_at(others, k, 0.0);
    const auto excess = [&](double x) {
        rho(static_cast<Eigen::Index>(k)) = x;
        return model.availability_map(rho, k, policy) - x;
    };

    // The map is below one at x = 1. Scan down for the largest point where it
    // still exceeds x; that brackets the largest root.
    double hi = 1.0;
    double lo = -1.0;
    for (int s = kBracketSteps - 1; s >= 1; --s) {
        const double x = static_cast<double>(s) / kBracketSteps;
        if (excess(x) > 0.0) {
            lo = x;
            break;
        }
        hi = x;
    }
    if (lo < 0.0) {
        if (!(excess(kLowerEdge) > 0.0)) return 0.0;
        lo = kLowerEdge;
    }
    while (hi - lo > kBisectionTolerance) {
        const double mid = 0.5 * (lo + hi);
        if (excess(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

double boundary(const NetworkScenario& scenario, std::size_t k,
                const AvailabilityVector& others, const std::optional<PolicySpec>& constraint) {
    return boundary(AvailabilityModel(scenario), k, others.values(), constraint);
}

bool contains(const AvailabilityModel& model, const Eigen::Ref<const Eigen::VectorXd>& rho,
              std::span<const PolicySpec> policies) {
    const std::size_t tiers = model.num_tiers();
    if (static_cast<std::size_t>(rho.size()) != tiers) {
        throw std::invalid_argument("contains: availability size does not match tier count");
    }
    if (!policies.empty() && policies.size() != tiers) {
        throw std::invalid_argument("contains: one policy per tier required");
    }
    if ((rho.array() < 0.0).any()) throw std::invalid_argument("contains: negative availability");
    if ((rho.array() > 1.0).any()) return false;

    for (std::size_t k = 0; k < tiers; ++k) {
        Eigen::VectorXd others(static_cast<Eigen::Index>(tiers - 1));
        for (std::size_t j = 0, o = 0; j < tiers; ++j) {
            if (j != k) others(static_cast<Eigen::Index>(o++)) = rho(static_cast<Eigen::Index>(j));
        }
        std::optional<PolicySpec> constraint;
        if (!policies.empty()) constraint = policies[k];
        if (rho(static_cast<Eigen::Index>(k)) >
            boundary(model, k, others, constraint) + kContainsSlack) {
            return false;
        }
    }
    return true;
}

bool contains(const NetworkScenario& scenario, const AvailabilityVector& rho,
              std::span<const PolicySpec> policies) {
    return contains(AvailabilityModel(scenario), rho.values(), policies);
}

RegionBoundary sweep_boundary(const NetworkScenario& scenario, std::size_t k, int resolution,
                              const std::optional<PolicySpec>& constraint) {
    require_two_tiers(scenario);
    if (k >= 2) throw std::out_of_range("sweep_boundary: tier index out of range");
    if (resolution < 2) throw std::invalid_argument("sweep_boundary: resolution must be >= 2");
    const AvailabilityModel model(scenario);

    RegionBoundary out{k, std::vector<std::pair<double, double>>(static_cast<std::size_t>(resolution)),
                       constraint};
    parallel_for(static_cast<std::size_t>(resolution), [&](std::size_t i) {
        const double other = static_cast<double>(i) / (resolution - 1);
        Eigen::VectorXd others(1);
        others << other;
        out.samples[i] = {other, boundary(model, k, others, constraint)};
    });
    return out;
}

double region_area(const NetworkScenario& scenario, int resolution,
                   std::span<const PolicySpec> policies) {
    require_two_tiers(scenario);
    if (resolution < 1) throw std::invalid_argument("region_area: resolution must be >= 1");
    const AvailabilityModel model(scenario);
    const std::optional<PolicySpec> c0 =
        policies.empty() ? std::nullopt : std::optional<PolicySpec>(policies[0]);
    const std::optional<PolicySpec> c1 =
        policies.empty() ? std::nullopt : std::optional<PolicySpec>(policies[1]);

    // The boundaries are monotone in the conditioning availability, so one
    // boundary solve per row/column decides every cell.
    const auto n = static_cast<std::size_t>(resolution);
    std::vector<double> tier0_max(n);  // rho_1*(rho_2 = centre_i)
    std::vector<double> tier1_max(n);  // rho_2*(rho_1 = centre_i)
    parallel_for(n, [&](std::size_t i) {
        Eigen::VectorXd other(1);
        other << (static_cast<double>(i) + 0.5) / resolution;
        tier0_max[i] = boundary(model, 0, other, c0);
        tier1_max[i] = boundary(model, 1, other, c1);
    });

    std::size_t inside = 0;
    for (std::size_t a = 0; a < n; ++a) {
        const double r1 = (static_cast<double>(a) + 0.5) / resolution;
        for (std::size_t b = 0; b < n; ++b) {
            const double r2 = (static_cast<double>(b) + 0.5) / resolution;
            if (r1 <= tier0_max[b] && r2 <= tier1_max[a]) ++inside;
        }
    }
    return static_cast<double>(inside) / static_cast<double>(n * n);
}

}  // namespace hetnet
