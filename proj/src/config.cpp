#include "tsloss/config.hpp"

#include <fstream>
#include <sstream>

namespace tsloss {

using nlohmann::json;

namespace {

const json& require(const json& doc, const char* key)
{
    const auto it = doc.find(key);
    if (it == doc.end()) throw ConfigError(key, "missing field");
    return *it;
}

double number(const json& doc, const char* key)
{
    const json& v = require(doc, key);
    if (!v.is_number()) throw ConfigError(key, "expected a number");
    return v.get<double>();
}

std::int64_t integer(const json& doc, const char* key)
{
    const json& v = require(doc, key);
    if (!v.is_number_integer()) throw ConfigError(key, "expected an integer");
    return v.get<std::int64_t>();
}

bool flag(const json& doc, const char* key, bool fallback)
{
    const auto it = doc.find(key);
    if (it == doc.end()) return fallback;
    if (!it->is_boolean()) throw ConfigError(key, "expected true or false");
    return it->get<bool>();
}

std::vector<double> number_list(const json& doc, const char* key)
{
    const json& v = require(doc, key);
    if (!v.is_array()) throw ConfigError(key, "expected a list of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError(key, "expected a list of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

Pmf pmf_field(const json& doc, const char* key)
{
    try {
        return Pmf(number_list(doc, key));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(key, e.what());
    }
}

CostSpec cost_field(const json& doc, const char* key)
{
    const json& v = require(doc, key);
    if (!v.is_object()) throw ConfigError(key, "expected an object {family, mean, sd}");
    CostSpec spec;
    try {
        const json& family = require(v, "family");
        if (!family.is_string()) throw ConfigError("family", "expected a string");
        spec.family = cost_family_from_string(family.get<std::string>());
        spec.mean = number(v, "mean");
        spec.sd = number(v, "sd");
        validate(spec);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(key) + "." + e.field(), e.detail());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(key, e.what());
    }
    return spec;
}

json pmf_json(const Pmf& pmf)
{
    return json(std::vector<double>(pmf.probs().begin(), pmf.probs().end()));
}

json cost_json(const CostSpec& spec)
{
    return {{"family", std::string(to_string(spec.family))}, {"mean", spec.mean}, {"sd", spec.sd}};
}

AggregateMode mode_from_string(const std::string& s)
{
    if (s == "per-scenario") return AggregateMode::per_scenario;
    if (s == "aggregate-direct") return AggregateMode::aggregate_direct;
    throw ConfigError("mode", "expected \"per-scenario\" or \"aggregate-direct\", got \"" + s + "\"");
}

}  // namespace

std::string_view to_string(AggregateMode mode)
{
    return mode == AggregateMode::per_scenario ? "per-scenario" : "aggregate-direct";
}

ExperimentConfig parse_config(const json& doc)
{
    if (!doc.is_object()) throw ConfigError("<document>", "expected a JSON object");
    ExperimentConfig cfg;
    ModelParams& m = cfg.params;

    m.offspring = pmf_field(doc, "offspring_pmf");
    m.users = pmf_field(doc, "user_pmf");

    const auto radius = integer(doc, "radius");
    if (radius < 0) throw ConfigError("radius", "must be >= 0");
    if (radius > 64) throw ConfigError("radius", "must be <= 64");
    m.radius = static_cast<int>(radius);

    m.p = number(doc, "p");
    if (!(m.p >= 0.0 && m.p <= 1.0)) throw ConfigError("p", "must lie in [0, 1]");
    m.q = number(doc, "q");
    if (!(m.q >= 0.0 && m.q <= 1.0)) throw ConfigError("q", "must lie in [0, 1]");

    m.cost_contract = cost_field(doc, "cost_contract");
    m.cost_user = cost_field(doc, "cost_user");

    const auto weights = number_list(doc, "scenario_weights");
    if (weights.size() != 4) throw ConfigError("scenario_weights", "expected 4 values");
    try {
        m.weights = ScenarioWeights({weights[0], weights[1], weights[2], weights[3]});
    } catch (const std::invalid_argument& e) {
        throw ConfigError("scenario_weights", e.what());
    }

    m.lambda = number(doc, "lambda");
    if (!(m.lambda >= 0.0)) throw ConfigError("lambda", "must be >= 0");
    m.t = number(doc, "t");
    if (!(m.t >= 0.0)) throw ConfigError("t", "must be >= 0");
    m.loading_delta = number(doc, "loading_delta");
    if (!(m.loading_delta >= 0.0)) throw ConfigError("loading_delta", "must be >= 0");

    const auto reps = integer(doc, "replications");
    if (reps < 1) throw ConfigError("replications", "must be >= 1");
    cfg.run.replications = static_cast<std::uint64_t>(reps);

    const json& seed = require(doc, "seed");
    if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0))
        throw ConfigError("seed", "expected a non-negative integer");
    cfg.run.seed = seed.get<std::uint64_t>();

    const auto workers = integer(doc, "workers");
    if (workers < 1 || workers > 1024) throw ConfigError("workers", "must lie in [1, 1024]");
    cfg.run.workers = static_cast<unsigned>(workers);

    const json& mode = require(doc, "mode");
    if (!mode.is_string()) throw ConfigError("mode", "expected a string");
    cfg.run.mode = mode_from_string(mode.get<std::string>());

    cfg.run_analytic = flag(doc, "run_analytic", true);
    cfg.run_simulation = flag(doc, "run_simulation", true);
    if (!cfg.run_analytic && !cfg.run_simulation)
        throw ConfigError("run_analytic", "at least one of run_analytic and run_simulation must be true");

    if (const auto it = doc.find("scenarios"); it != doc.end()) {
        if (!it->is_array()) throw ConfigError("scenarios", "expected a list of scenario numbers");
        for (const auto& e : *it) {
            if (!e.is_number_integer()) throw ConfigError("scenarios", "expected integers 1..4");
            try {
                cfg.scenarios.emplace_back(e.get<int>());
            } catch (const std::invalid_argument& err) {
                throw ConfigError("scenarios", err.what());
            }
        }
    } else {
        for (ScenarioId s : kAllScenarios)
            if (m.weights[s] > 0.0) cfg.scenarios.push_back(s);
    }

    if (const auto it = doc.find("output"); it != doc.end()) {
        if (!it->is_string()) throw ConfigError("output", "expected a path string");
        cfg.output = it->get<std::string>();
    }
    if (const auto it = doc.find("cost_topology"); it != doc.end()) {
        if (!it->is_string()) throw ConfigError("cost_topology", "expected a string");
        cfg.cost_topology = it->get<std::string>();
    }

    try {
        validate(m);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("<params>", e.what());
    }
    return cfg;
}

ExperimentConfig parse_config(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", std::string("malformed JSON: ") + e.what());
    }
    return parse_config(doc);
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(std::string_view(buf.str()));
    } catch (const ConfigError& e) {
        throw ConfigError(e.field(), e.detail() + " (in " + path + ")");
    }
}

json to_json(const ExperimentConfig& cfg)
{
    const ModelParams& m = cfg.params;
    json scenarios = json::array();
    for (ScenarioId s : cfg.scenarios) scenarios.push_back(s.value());
    json doc = {
        {"offspring_pmf", pmf_json(m.offspring)},
        {"user_pmf", pmf_json(m.users)},
        {"radius", m.radius},
        {"p", m.p},
        {"q", m.q},
        {"cost_contract", cost_json(m.cost_contract)},
        {"cost_user", cost_json(m.cost_user)},
        {"scenario_weights", m.weights.values()},
        {"lambda", m.lambda},
        {"t", m.t},
        {"loading_delta", m.loading_delta},
        {"replications", cfg.run.replications},
        {"seed", cfg.run.seed},
        {"workers", cfg.run.workers},
        {"mode", std::string(to_string(cfg.run.mode))},
        {"run_analytic", cfg.run_analytic},
        {"run_simulation", cfg.run_simulation},
        {"scenarios", scenarios},
    };
    if (!cfg.output.empty()) doc["output"] = cfg.output;
    if (!cfg.cost_topology.empty()) doc["cost_topology"] = cfg.cost_topology;
    return doc;
}

std::string serialize_config(const ExperimentConfig& cfg)
{
    return to_json(cfg).dump(2);
}

}  // namespace tsloss
