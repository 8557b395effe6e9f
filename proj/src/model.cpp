#include "hetnet/model.hpp"

#include <cmath>
#include <sstream>

namespace hetnet {

namespace {

std::string describe(const std::string& field, std::optional<std::size_t> tier,
                     const std::string& message) {
    std::ostringstream os;
    if (tier) {
        os << "tiers[" << *tier << "]." << field << ": ";
    } else {
        os << field << ": ";
    }
    os << message;
    return os.str();
}

void require(bool ok, const char* field, std::optional<std::size_t> tier,
             const char* message) {
    if (!ok) {
        throw ValidationError(field, tier, message);
    }
}

}  // namespace

ValidationError::ValidationError(std::string field, std::optional<std::size_t> tier,
                                 const std::string& message)
    : std::invalid_argument(describe(field, tier, message)),
      field_(std::move(field)),
      tier_(tier) {}

void validate(const NetworkScenario& scenario) {
    require(!scenario.tiers.empty(), "tiers", std::nullopt, "at least one tier is required");
    require(std::isfinite(scenario.path_loss_exp) && scenario.path_loss_exp > 2.0,
            "path_loss_exp", std::nullopt, "path_loss_exp must exceed 2");
    require(std::isfinite(scenario.user_density) && scenario.user_density > 0.0,
            "user_density", std::nullopt, "user_density must be positive");
    require(std::isfinite(scenario.sir_target) && scenario.sir_target > 0.0, "sir_target",
            std::nullopt, "sir_target must be positive (linear scale)");

    for (std::size_t k = 0; k < scenario.tiers.size(); ++k) {
        const TierParams& t = scenario.tiers[k];
        require(std::isfinite(t.density) && t.density > 0.0, "density", k,
                "density must be positive");
        require(std::isfinite(t.tx_power) && t.tx_power > 0.0, "tx_power", k,
                "tx_power must be positive");
        require(std::isfinite(t.harvest_rate) && t.harvest_rate > 0.0, "harvest_rate", k,
                "harvest_rate must be positive");
        require(t.battery >= 1, "battery", k, "battery must be at least 1");
        require(std::isfinite(t.shadowing.mean_db), "shadowing.mean_db", k,
                "shadowing mean must be finite");
        require(std::isfinite(t.shadowing.std_db) && t.shadowing.std_db >= 0.0,
                "shadowing.std_db", k, "shadowing std must be non-negative");
    }
}

AvailabilityVector::AvailabilityVector(Eigen::VectorXd values) : values_(std::move(values)) {
    for (Eigen::Index k = 0; k < values_.size(); ++k) {
        const double v = values_(k);
        if (!(v >= 0.0 && v <= 1.0)) {
            std::ostringstream os;
            os << "availability[" << k << "] = " << v << " is outside [0, 1]";
            throw std::domain_error(os.str());
        }
    }
}

AvailabilityVector::AvailabilityVector(std::initializer_list<double> values)
    : AvailabilityVector(Eigen::Map<const Eigen::VectorXd>(
          values.begin(), static_cast<Eigen::Index>(values.size()))) {}

AvailabilityVector AvailabilityVector::constant(Eigen::Index size, double value) {
    return AvailabilityVector(Eigen::VectorXd::Constant(size, value));
}

}  // namespace hetnet
