#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using namespace hetnet::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "hetnet");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> rows(const std::string& csv) {
    std::vector<std::vector<std::string>> table;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        table.push_back(cells);
    }
    return table;
}

std::string write_temp(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / ("hetnet_test_" + name + ".json");
    std::ofstream(path) << text;
    return path.string();
}

std::string two_tier(const std::string& demand) {
    return R"({
  "path_loss_exp": 4.0,
  "sir_target_db": 0.0,
  )" + demand + R"(,
  "tiers": [
    {"density": 1.0, "tx_power": 1.0, "harvest_rate": 2.0, "battery": 10},
    {"density": 10.0, "tx_power": 0.1, "harvest_rate": 1.0, "battery": 8}
  ],
  "simulation": {"seed": 3, "replicates": 2}
})";
}

const std::string kDefault = std::string(SCENARIO_DIR) + "/default.json";

}  // namespace

TEST_CASE("parser rejects unknown keys by name") {
    const std::string text = R"({"path_loss_exp": 4, "sir_target": 1, "user_density": 5,
        "tiers": [{"density": 1, "tx_power": 1, "harvest_rate": 1, "battery": 3, "colour": 1}]})";
    try {
        parse_scenario(text);
        FAIL("expected a parse error");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("colour") != std::string::npos);
    }
}

TEST_CASE("demand must be given exactly one way") {
    CHECK_THROWS(parse_scenario(two_tier(R"("user_density": 5, "over_provisioning": 1.1)")));
    const auto f = parse_scenario(two_tier(R"("user_density": 5)"));
    CHECK(f.scenario.user_density == 5.0);
    CHECK(f.policies.size() == 2);
    CHECK(f.simulation.seed == 3);
}

TEST_CASE("usage errors exit 1") {
    CHECK(run({}).code == ExitCode::usage_error);
    CHECK(run({"nonsense"}).code == ExitCode::usage_error);
    CHECK(run({"availability", "/nonexistent/file.json"}).code == ExitCode::usage_error);
    CHECK(run({"availability", kDefault, "--policy2", "k=9"}).code == ExitCode::usage_error);
    const auto bad = write_temp("bad", "{ not json");
    CHECK(run({"coverage", bad}).code == ExitCode::usage_error);
    CHECK(run({"--help"}).code == ExitCode::ok);
}

TEST_CASE("availability table and infeasible exit") {
    const auto r = run({"availability", kDefault});
    REQUIRE(r.code == ExitCode::ok);
    const auto t = rows(r.out);
    REQUIRE(t.size() == 3);
    CHECK(t[0] == std::vector<std::string>{"tier", "policy", "rho", "gamma", "feasible", "iterations",
                                           "residual"});
    CHECK(std::stod(t[1][3]) == doctest::Approx(1.1));

    const auto starved = write_temp("starved", two_tier(R"("over_provisioning": 0.9)"));
    CHECK(run({"availability", starved}).code == ExitCode::infeasible);
}

TEST_CASE("full recharge on tier 2 lowers its availability") {
    const auto base = rows(run({"availability", kDefault}).out);
    const auto r = run({"availability", kDefault, "--policy2", "k=2"});
    REQUIRE(r.code == ExitCode::ok);
    const auto mixed = rows(r.out);
    CHECK(std::stod(mixed[2][2]) < std::stod(base[2][2]));
}

TEST_CASE("region emits both boundary curves") {
    const auto r = run({"region", kDefault, "--grid", "11"});
    REQUIRE(r.code == ExitCode::ok);
    const auto t = rows(r.out);
    REQUIRE(t.size() == 12);
    CHECK(t[0] == std::vector<std::string>{"grid", "rho2_star_given_rho1", "rho1_star_given_rho2"});
    for (std::size_t i = 1; i < t.size(); ++i) {
        CHECK(std::stod(t[i][1]) >= 0.0);
        CHECK(std::stod(t[i][1]) <= 1.0);
    }
}

TEST_CASE("coverage at 0 dB and alpha 4") {
    const auto r = run({"coverage", kDefault});
    REQUIRE(r.code == ExitCode::ok);
    const auto t = rows(r.out);
    REQUIRE(t.size() == 2);
    CHECK(std::stod(t[1][3]) == doctest::Approx(1.0 / (1.0 + std::numbers::pi / 4.0)).epsilon(1e-9));

    const auto shifted = rows(run({"coverage", kDefault, "--sir-target-db", "3"}).out);
    CHECK(std::stod(shifted[1][3]) < std::stod(t[1][3]));
}

TEST_CASE("rate at a zero target is one") {
    const auto zero = write_temp("zero_rate", two_tier(R"("user_density": 5)"));
    const auto r = run({"rate", zero});
    REQUIRE(r.code == ExitCode::ok);
    const auto t = rows(r.out);
    REQUIRE(t.size() == 2);
    CHECK(std::stod(t[1][1]) == doctest::Approx(1.0));
}

TEST_CASE("loose solver tolerance fails validation") {
    const auto r = run({"validate", kDefault, "--tol", "1e-3", "--replicates", "2"});
    CHECK(r.code == ExitCode::validation_failed);
    CHECK(r.err.find("fixed_point_residual") != std::string::npos);
}

TEST_CASE("simulate is reproducible for a fixed seed") {
    const std::vector<std::string> args{"simulate", kDefault, "--seed", "11", "--replicates", "2"};
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.code == ExitCode::ok);
    CHECK(a.out == b.out);
    const auto other = run({"simulate", kDefault, "--seed", "12", "--replicates", "2"});
    CHECK(other.out != a.out);
}
