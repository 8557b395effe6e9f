// Batch front-end: scenario files in, CSV tables out.
#ifndef HETNET_TOOLS_CLI_HPP
#define HETNET_TOOLS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hetnet/markov.hpp"
#include "hetnet/model.hpp"
#include "hetnet/simulator.hpp"

namespace hetnet::cli {

enum ExitCode : int {
    ok = 0,
    usage_error = 1,
    infeasible = 2,
    validation_failed = 3,
};

struct Sweep {
    std::string variable;  // "rate_target" or "rho"
    double from = 0.0;
    double to = 1.0;
    int steps = 11;
};

/// Everything a scenario file can carry.
struct ScenarioFile {
    NetworkScenario scenario;
    std::vector<PolicySpec> policies;  // one per tier
    SimConfig simulation;
    std::optional<std::vector<double>> rho;
    double rate_target = 0.0;
    std::optional<Sweep> sweep;
};

/// Parses a scenario document. Throws std::invalid_argument (or a
/// ValidationError) with the offending key in the message.
ScenarioFile parse_scenario(const std::string& json_text);
ScenarioFile load_scenario(const std::string& path);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hetnet::cli

#endif  // HETNET_TOOLS_CLI_HPP
