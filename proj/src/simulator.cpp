#include "hetnet/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hetnet/parallel.hpp"

namespace hetnet {

namespace {

struct Geometry {
    double side;
    BoundaryMode mode;
    double margin;

    double dist2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) const {
        double dx = std::abs(a.x() - b.x());
        double dy = std::abs(a.y() - b.y());
        if (mode == BoundaryMode::toroidal) {
            dx = std::min(dx, side - dx);
            dy = std::min(dy, side - dy);
        }
        return dx * dx + dy * dy;
    }

    bool measured(const Eigen::Vector2d& p) const {
        if (mode == BoundaryMode::toroidal) return true;
        return p.x() >= margin && p.x() <= side - margin && p.y() >= margin &&
               p.y() <= side - margin;
    }

    double measured_area() const {
        const double inner = mode == BoundaryMode::toroidal ? side : side - 2.0 * margin;
        return inner * inner;
    }
};

Geometry make_geometry(const SimConfig& config, double side) {
    return {side, config.boundary, config.boundary == BoundaryMode::guard ? config.guard_margin : 0.0};
}

Eigen::Matrix2Xd uniform_points(std::int64_t count, double side, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coord(0.0, side);
    Eigen::Matrix2Xd pts(2, count);
    for (std::int64_t i = 0; i < count; ++i) {
        pts(0, i) = coord(rng);
        pts(1, i) = coord(rng);
    }
    return pts;
}

Eigen::Matrix2Xd poisson_points(double density, double side, std::mt19937_64& rng) {
    const double mean = density * side * side;
    if (mean <= 0.0) return Eigen::Matrix2Xd(2, 0);
    std::poisson_distribution<std::int64_t> count(mean);
    return uniform_points(count(rng), side, rng);
}

// Per-link evaluation for one receiver location against every ON BS.
class LinkEvaluator {
public:
    LinkEvaluator(const NetworkScenario& scenario, const Realization& realization,
                  const Geometry& geometry)
        : scenario_(scenario), realization_(realization), geometry_(geometry),
          half_alpha_(scenario.path_loss_exp / 2.0) {
        std::size_t total = 0;
        for (const auto& t : realization.tiers) total += static_cast<std::size_t>(t.cols());
        if (total == 0) throw std::domain_error("empty network: no BS is on");
        gains_.resize(total);
    }

    struct Result {
        ServingLink serving;
        double sir = 0.0;
    };

    // Association by average power; SIR only when `with_fading`.
    Result evaluate(const Eigen::Vector2d& z, std::mt19937_64& rng, bool with_fading) {
        std::size_t slot = 0;
        std::size_t best_slot = 0;
        double best = -1.0;
        Result out;
        for (std::size_t k = 0; k < realization_.tiers.size(); ++k) {
            const Eigen::Matrix2Xd& pts = realization_.tiers[k];
            const TierParams& tier = scenario_.tiers[k];
            const bool shadowed = tier.shadowing.std_db > 0.0;
            const double fixed_shadow = db_to_linear(tier.shadowing.mean_db);
            std::normal_distribution<double> shadow_db(tier.shadowing.mean_db, tier.shadowing.std_db);
            for (Eigen::Index i = 0; i < pts.cols(); ++i, ++slot) {
                const double d2 = std::max(geometry_.dist2(z, pts.col(i)), 1e-300);
                const double x = shadowed ? db_to_linear(shadow_db(rng)) : fixed_shadow;
                const double gain = tier.tx_power * x * path_loss(d2);
                gains_[slot] = gain;
                if (gain > best) {
                    best = gain;
                    best_slot = slot;
                    out.serving = {static_cast<int>(k), i};
                }
            }
        }
        if (with_fading) {
            double signal = 0.0;
            double interference = 0.0;
            for (std::size_t s = 0; s < slot; ++s) {
                const double received = fading_(rng) * gains_[s];
                if (s == best_slot) {
                    signal = received;
                } else {
                    interference += received;
                }
            }
            out.sir = interference > 0.0 ? signal / interference
                                         : std::numeric_limits<double>::infinity();
        }
        return out;
    }

private:
    double path_loss(double d2) const {
        if (half_alpha_ == 2.0) return 1.0 / (d2 * d2);
        return std::pow(d2, -half_alpha_);
    }

    const NetworkScenario& scenario_;
    const Realization& realization_;
    const Geometry& geometry_;
    double half_alpha_;
    std::vector<double> gains_;
    std::exponential_distribution<double> fading_{1.0};
};

bool any_on(const Realization& r) {
    for (const auto& t : r.tiers) {
        if (t.cols() > 0) return true;
    }
    return false;
}

void check_inputs(const NetworkScenario& scenario, const AvailabilityVector& rho) {
    validate(scenario);
    if (static_cast<std::size_t>(rho.size()) != scenario.num_tiers()) {
        throw std::invalid_argument("availability size does not match tier count");
    }
    if (rho.all_zero()) throw std::domain_error("no BS available");
}

SimConfig resolved(const NetworkScenario& scenario, const AvailabilityVector& rho,
                   SimConfig config) {
    if (config.window_side == 0.0) config.window_side = suggest_window_side(scenario, rho);
    validate(config);
    return config;
}

// Draws a realization with at least one ON BS. Returns the number of redraws.
int sample_nonempty(const NetworkScenario& scenario, const AvailabilityVector& rho,
                    const SimConfig& config, std::mt19937_64& rng, Realization& out) {
    int redraws = 0;
    out = sample_network(scenario, rho, config, rng);
    while (!any_on(out)) {
        ++redraws;
        out = sample_network(scenario, rho, config, rng);
    }
    return redraws;
}

struct ReplicateTotals {
    double numerator = 0.0;
    double denominator = 0.0;
};

SimEstimate reduce(const std::vector<ReplicateTotals>& totals, std::uint64_t seed) {
    std::vector<double> num(totals.size());
    std::vector<double> den(totals.size());
    double users = 0.0;
    for (std::size_t i = 0; i < totals.size(); ++i) {
        num[i] = totals[i].numerator;
        den[i] = totals[i].denominator;
        users += den[i];
    }
    SimEstimate e = ratio_estimate(num, den, seed);
    e.samples = static_cast<std::int64_t>(users);
    return e;
}

}  // namespace

void validate(const SimConfig& config) {
    if (!(config.window_side > 0.0) || !std::isfinite(config.window_side)) {
        throw std::invalid_argument("window_side must be positive");
    }
    if (config.replicates < 1) throw std::invalid_argument("replicates must be at least 1");
    if (config.max_users < 0) throw std::invalid_argument("max_users must be non-negative");
    if (config.boundary == BoundaryMode::guard &&
        !(config.guard_margin >= 0.0 && config.guard_margin < config.window_side / 2.0)) {
        throw std::invalid_argument("guard margin must lie in [0, window_side / 2)");
    }
}

double suggest_window_side(const NetworkScenario& scenario, const AvailabilityVector& rho,
                           double min_count) {
    check_inputs(scenario, rho);
    double sparsest = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < scenario.num_tiers(); ++k) {
        const double d = rho[k] * scenario.tiers[k].density;
        if (d > 0.0) sparsest = std::min(sparsest, d);
    }
    return std::sqrt(min_count / sparsest);
}

Realization sample_network(const NetworkScenario& scenario, const AvailabilityVector& rho,
                           const SimConfig& config, std::mt19937_64& rng) {
    validate(scenario);
    validate(config);
    if (static_cast<std::size_t>(rho.size()) != scenario.num_tiers()) {
        throw std::invalid_argument("availability size does not match tier count");
    }
    Realization r;
    r.side = config.window_side;
    for (std::size_t k = 0; k < scenario.num_tiers(); ++k) {
        r.tiers.push_back(poisson_points(rho[k] * scenario.tiers[k].density, r.side, rng));
    }
    r.users = poisson_points(scenario.user_density, r.side, rng);
    return r;
}

std::vector<ServingLink> associate(const Realization& realization,
                                   const NetworkScenario& scenario, std::mt19937_64& rng,
                                   BoundaryMode boundary) {
    const Geometry geometry{realization.side, boundary, 0.0};
    LinkEvaluator links(scenario, realization, geometry);
    std::vector<ServingLink> out(static_cast<std::size_t>(realization.users.cols()));
    for (Eigen::Index u = 0; u < realization.users.cols(); ++u) {
        out[static_cast<std::size_t>(u)] = links.evaluate(realization.users.col(u), rng, false).serving;
    }
    return out;
}

SimEstimate service_area_mc(const NetworkScenario& scenario, const AvailabilityVector& rho,
                            std::size_t k, const SimConfig& config_in, int probes_per_replicate,
                            int* resampled) {
    check_inputs(scenario, rho);
    if (k >= scenario.num_tiers()) throw std::out_of_range("tier index out of range");
    if (!(rho[k] * scenario.tiers[k].density > 0.0)) {
        throw std::domain_error("service_area_mc: tier has no available BSs");
    }
    if (probes_per_replicate < 1) throw std::invalid_argument("need at least one probe");
    const SimConfig config = resolved(scenario, rho, config_in);
    const Geometry geometry = make_geometry(config, config.window_side);

    std::vector<ReplicateTotals> totals(static_cast<std::size_t>(config.replicates));
    std::vector<int> redraws(totals.size(), 0);
    parallel_for(totals.size(), [&](std::size_t rep) {
        std::mt19937_64 rng = make_stream(config.seed, rep);
        Realization real;
        double count = 0.0;
        for (;;) {
            sample_nonempty(scenario, rho, config, rng, real);
            const Eigen::Matrix2Xd& pts = real.tiers[k];
            count = 0.0;
            for (Eigen::Index i = 0; i < pts.cols(); ++i) {
                if (geometry.measured(pts.col(i))) count += 1.0;
            }
            if (count > 0.0) break;
            ++redraws[rep];
        }
        LinkEvaluator links(scenario, real, geometry);
        std::uniform_real_distribution<double> coord(geometry.margin, geometry.side - geometry.margin);
        int served = 0;
        for (int p = 0; p < probes_per_replicate; ++p) {
            const Eigen::Vector2d z(coord(rng), coord(rng));
            if (links.evaluate(z, rng, false).serving.tier == static_cast<int>(k)) ++served;
        }
        totals[rep] = {geometry.measured_area() * served / probes_per_replicate, count};
    });
    if (resampled) {
        *resampled = 0;
        for (int r : redraws) *resampled += r;
    }
    SimEstimate e = reduce(totals, config.seed);
    e.samples = config.replicates;
    return e;
}

SimEstimate association_mc(const NetworkScenario& scenario, const AvailabilityVector& rho,
                           std::size_t k, const SimConfig& config_in) {
    check_inputs(scenario, rho);
    if (k >= scenario.num_tiers()) throw std::out_of_range("tier index out of range");
    const SimConfig config = resolved(scenario, rho, config_in);
    const Geometry geometry = make_geometry(config, config.window_side);

    std::vector<ReplicateTotals> totals(static_cast<std::size_t>(config.replicates));
    parallel_for(totals.size(), [&](std::size_t rep) {
        std::mt19937_64 rng = make_stream(config.seed, rep);
        Realization real;
        sample_nonempty(scenario, rho, config, rng, real);
        LinkEvaluator links(scenario, real, geometry);
        ReplicateTotals t;
        // users are i.i.d. uniform, so any prefix is a fair sample
        for (Eigen::Index u = 0; u < real.users.cols(); ++u) {
            if (config.max_users > 0 && t.denominator >= config.max_users) break;
            if (!geometry.measured(real.users.col(u))) continue;
            t.denominator += 1.0;
            if (links.evaluate(real.users.col(u), rng, false).serving.tier == static_cast<int>(k)) {
                t.numerator += 1.0;
            }
        }
        totals[rep] = t;
    });
    return reduce(totals, config.seed);
}

SimEstimate coverage_mc(const NetworkScenario& scenario, const AvailabilityVector& rho,
                        const SimConfig& config_in) {
    check_inputs(scenario, rho);
    const SimConfig config = resolved(scenario, rho, config_in);
    const Geometry geometry = make_geometry(config, config.window_side);

    std::vector<ReplicateTotals> totals(static_cast<std::size_t>(config.replicates));
    parallel_for(totals.size(), [&](std::size_t rep) {
        std::mt19937_64 rng = make_stream(config.seed, rep);
        Realization real;
        sample_nonempty(scenario, rho, config, rng, real);
        LinkEvaluator links(scenario, real, geometry);
        ReplicateTotals t;
        // users are i.i.d. uniform, so any prefix is a fair sample
        for (Eigen::Index u = 0; u < real.users.cols(); ++u) {
            if (config.max_users > 0 && t.denominator >= config.max_users) break;
            if (!geometry.measured(real.users.col(u))) continue;
            t.denominator += 1.0;
            if (links.evaluate(real.users.col(u), rng, true).sir > scenario.sir_target) {
                t.numerator += 1.0;
            }
        }
        totals[rep] = t;
    });
    return reduce(totals, config.seed);
}

SimEstimate rate_mc(const NetworkScenario& scenario, const AvailabilityVector& rho,
                    double rate_target, const SimConfig& config_in) {
    check_inputs(scenario, rho);
    if (!(rate_target >= 0.0)) throw std::invalid_argument("rate target must be non-negative");
    const SimConfig config = resolved(scenario, rho, config_in);
    const Geometry geometry = make_geometry(config, config.window_side);

    std::vector<ReplicateTotals> totals(static_cast<std::size_t>(config.replicates));
    parallel_for(totals.size(), [&](std::size_t rep) {
        std::mt19937_64 rng = make_stream(config.seed, rep);
        Realization real;
        sample_nonempty(scenario, rho, config, rng, real);
        LinkEvaluator links(scenario, real, geometry);

        std::vector<std::size_t> offset(real.tiers.size() + 1, 0);
        for (std::size_t k = 0; k < real.tiers.size(); ++k) {
            offset[k + 1] = offset[k] + static_cast<std::size_t>(real.tiers[k].cols());
        }
        const auto users = static_cast<std::size_t>(real.users.cols());
        std::vector<std::size_t> server(users);
        std::vector<double> sir(users);
        std::vector<int> covered_load(offset.back(), 0);
        for (std::size_t u = 0; u < users; ++u) {
            const auto res = links.evaluate(real.users.col(static_cast<Eigen::Index>(u)), rng, true);
            server[u] = offset[static_cast<std::size_t>(res.serving.tier)] +
                        static_cast<std::size_t>(res.serving.index);
            sir[u] = res.sir;
            if (res.sir > scenario.sir_target) ++covered_load[server[u]];
        }
        ReplicateTotals t;
        for (std::size_t u = 0; u < users; ++u) {
            if (!geometry.measured(real.users.col(static_cast<Eigen::Index>(u)))) continue;
            t.denominator += 1.0;
            const bool self_covered = sir[u] > scenario.sir_target;
            const int share = 1 + covered_load[server[u]] - (self_covered ? 1 : 0);
            const double rate = std::log2(1.0 + sir[u]) / share;
            if (rate > rate_target) t.numerator += 1.0;
        }
        totals[rep] = t;
    });
    return reduce(totals, config.seed);
}

}  // namespace hetnet
