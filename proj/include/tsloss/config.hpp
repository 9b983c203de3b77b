#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tsloss/model.hpp"
#include "tsloss/montecarlo.hpp"

namespace tsloss {

/// Invalid configuration document; the message names the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(field), detail_(what)
    {
    }
    const std::string& field() const noexcept { return field_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string field_;
    std::string detail_;
};

struct ExperimentConfig {
    ModelParams params;
    RunConfig run;
    std::string output;         // empty: standard output
    std::string cost_topology;  // free-form label; empty: derived from the cost specs
    bool run_analytic = true;
    bool run_simulation = true;
    std::vector<ScenarioId> scenarios;  // scenarios reported individually

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses the JSON configuration document.
///
/// Required keys: offspring_pmf, user_pmf, radius, p, q, cost_contract,
/// cost_user ({family, mean, sd}), scenario_weights, lambda, t,
/// loading_delta, replications, seed, workers, mode ("per-scenario" or
/// "aggregate-direct"). Optional: run_analytic, run_simulation, scenarios
/// (default: scenarios with positive weight), output, cost_topology.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

nlohmann::json to_json(const ExperimentConfig& cfg);
std::string serialize_config(const ExperimentConfig& cfg);

std::string_view to_string(AggregateMode mode);

}  // namespace tsloss
