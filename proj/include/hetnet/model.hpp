// Domain types for a K-tier energy-harvesting cellular network.
#ifndef HETNET_MODEL_HPP
#define HETNET_MODEL_HPP

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hetnet {

/// Lognormal shadowing: X = 10^(Y/10), Y ~ N(mean_db, std_db^2).
/// The default-constructed value is the degenerate "no shadowing" case X = 1.
struct ShadowingSpec {
    double mean_db = 0.0;
    double std_db = 0.0;

    static ShadowingSpec none() { return {}; }
    bool is_none() const { return mean_db == 0.0 && std_db == 0.0; }
    bool operator==(const ShadowingSpec&) const = default;
};

struct TierParams {
    double density = 1.0;       // BSs per unit area
    double tx_power = 1.0;      // per resource block
    double harvest_rate = 1.0;  // energy units per second
    int battery = 1;            // energy units
    ShadowingSpec shadowing;
};

/// Energy is normalized so that one served user consumes one unit per second.
/// `sir_target` is linear, not dB.
struct NetworkScenario {
    std::vector<TierParams> tiers;
    double user_density = 1.0;
    double path_loss_exp = 4.0;
    double sir_target = 1.0;

    std::size_t num_tiers() const { return tiers.size(); }
};

/// Raised by validate(). `field()` is the offending member name, `tier()` the
/// tier index when the violation is inside a TierParams.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, std::optional<std::size_t> tier,
                    const std::string& message);

    const std::string& field() const noexcept { return field_; }
    std::optional<std::size_t> tier() const noexcept { return tier_; }

private:
    std::string field_;
    std::optional<std::size_t> tier_;
};

/// Throws ValidationError on the first violated invariant.
void validate(const NetworkScenario& scenario);

/// Per-tier availabilities, each in [0, 1].
class AvailabilityVector {
public:
    AvailabilityVector() = default;
    explicit AvailabilityVector(Eigen::VectorXd values);
    AvailabilityVector(std::initializer_list<double> values);

    static AvailabilityVector constant(Eigen::Index size, double value);
    static AvailabilityVector zeros(Eigen::Index size) { return constant(size, 0.0); }
    static AvailabilityVector ones(Eigen::Index size) { return constant(size, 1.0); }

    const Eigen::VectorXd& values() const noexcept { return values_; }
    double operator[](Eigen::Index k) const { return values_(k); }
    Eigen::Index size() const noexcept { return values_.size(); }
    bool all_zero() const { return (values_.array() == 0.0).all(); }

private:
    Eigen::VectorXd values_;
};

/// Converts dB to linear power ratio.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace hetnet

#endif  // HETNET_MODEL_HPP
