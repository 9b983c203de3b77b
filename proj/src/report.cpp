#include "tsloss/report.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "tsloss/analytic.hpp"
#include "tsloss/montecarlo.hpp"

namespace tsloss {

namespace {

std::string format_general(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string format_money(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

template <typename T, typename F>
std::string optional_cell(const std::optional<T>& v, F format)
{
    return v ? format(*v) : std::string();
}

std::string cost_label(const CostSpec& c)
{
    if (c.family == CostFamily::point) return "point(" + format_general(c.mean) + ")";
    return "lognormal(" + format_general(c.mean) + ";" + format_general(c.sd) + ")";
}

RunConfig scenario_run(const RunConfig& run, ScenarioId s)
{
    RunConfig sub = run;
    sub.seed = scenario_seed(run.seed, s);
    return sub;
}

void fill_premiums(const MomentPair& m, double delta, std::optional<double>& expectation,
                   std::optional<double>& sd_principle)
{
    expectation = premium(m, delta, PremiumPrinciple::expectation);
    sd_principle = premium(m, delta, PremiumPrinciple::standard_deviation);
}

}  // namespace

std::string format_pmf(const Pmf& pmf)
{
    std::string out = "[";
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        if (k) out += ',';
        out += format_general(pmf[k]);
    }
    return out + "]";
}

std::string topology_label(const CostSpec& contract, const CostSpec& user)
{
    return "contract=" + cost_label(contract) + " user=" + cost_label(user);
}

const std::vector<std::string>& csv_columns()
{
    static const std::vector<std::string> columns{
        "scenario",
        "offspring_pmf",
        "user_pmf",
        "p",
        "q",
        "cost_topology",
        "analytic_mean",
        "analytic_sd",
        "sim_mean",
        "sim_sd",
        "sim_se_mean",
        "replications",
        "seed",
        "degenerate_fraction",
        "analytic_premium_expectation",
        "analytic_premium_sd",
        "sim_premium_expectation",
        "sim_premium_sd",
    };
    return columns;
}

std::vector<ReportRow> run_experiment(const ExperimentConfig& cfg)
{
    const ModelParams& params = cfg.params;
    validate(params);

    ReportRow base;
    base.offspring_pmf = format_pmf(params.offspring);
    base.user_pmf = format_pmf(params.users);
    base.p = params.p;
    base.q = params.q;
    base.cost_topology = cfg.cost_topology.empty()
                             ? topology_label(params.cost_contract, params.cost_user)
                             : cfg.cost_topology;
    if (cfg.run_simulation) {
        base.replications = cfg.run.replications;
        base.seed = cfg.run.seed;
    }

    std::array<std::optional<MomentPair>, 4> analytic;
    if (cfg.run_analytic) analytic = scenario_moments(params);

    std::array<std::optional<ScenarioEstimate>, 4> simulated;
    auto simulate = [&](ScenarioId s) -> const ScenarioEstimate& {
        auto& slot = simulated[s.index()];
        if (!slot) slot = estimate_scenario(params, s, scenario_run(cfg.run, s));
        return *slot;
    };

    std::vector<ReportRow> rows;
    for (ScenarioId s : cfg.scenarios) {
        ReportRow row = base;
        row.scenario = std::to_string(s.value());
        if (const auto& a = analytic[s.index()]) {
            row.analytic_mean = a->mean;
            row.analytic_sd = a->sd();
        }
        if (cfg.run_simulation) {
            const ScenarioEstimate& e = simulate(s);
            row.sim_mean = e.mean;
            row.sim_sd = e.sd;
            row.sim_se_mean = e.se_mean;
            row.degenerate_fraction = e.degenerate_fraction;
        }
        rows.push_back(std::move(row));
    }

    ReportRow agg = base;
    agg.scenario = "aggregate";
    if (cfg.run_analytic) {
        bool complete = true;
        for (ScenarioId s : kAllScenarios)
            if (params.weights[s] > 0.0 && !analytic[s.index()]) complete = false;
        if (complete) {
            const MomentPair m = aggregate_moments(params.lambda, params.t, params.weights, analytic);
            agg.analytic_mean = m.mean;
            agg.analytic_sd = m.sd();
            fill_premiums(m, params.loading_delta, agg.analytic_premium_expectation,
                          agg.analytic_premium_sd);
        }
    }
    if (cfg.run_simulation) {
        AggregateEstimate e;
        if (cfg.run.mode == AggregateMode::per_scenario) {
            for (ScenarioId s : kAllScenarios)
                if (params.weights[s] > 0.0) simulate(s);
            e = combine_scenario_estimates(params, simulated);
        } else {
            e = estimate_aggregate(params, cfg.run);
        }
        agg.sim_mean = e.mean;
        agg.sim_sd = e.sd;
        agg.sim_se_mean = e.se_mean;
        agg.degenerate_fraction = e.degenerate_fraction;
        fill_premiums({e.mean, e.sd * e.sd}, params.loading_delta, agg.sim_premium_expectation,
                      agg.sim_premium_sd);
    }
    rows.push_back(std::move(agg));
    return rows;
}

std::vector<ExperimentConfig> table_configs(TableId table, std::uint64_t replications,
                                            std::uint64_t seed, unsigned workers)
{
    struct Topology {
        const char* label;
        double contract_sd;
        double user_sd;
    };
    static constexpr std::array<Topology, 3> topologies{
        Topology{"I", 0.0, 0.0}, Topology{"II", 5000.0, 0.0}, Topology{"III", 0.0, 500.0}};
    static constexpr std::array<std::array<double, 2>, 4> edge_probs{
        {{0.8, 0.8}, {0.8, 0.2}, {0.2, 0.8}, {0.2, 0.2}}};
    const Pmf binary{0.0, 0.0, 1.0};
    const Pmf mixed{0.0, 0.4, 0.6};
    const Pmf four_users{0.0, 0.0, 0.0, 0.0, 1.0};
    const Pmf spread_users{0.0, 0.1, 0.2, 0.3, 0.4};

    std::vector<std::pair<Pmf, Pmf>> graphs;
    if (table == TableId::scenario1_grid)
        graphs = {{binary, four_users}, {binary, spread_users}, {mixed, four_users},
                  {mixed, spread_users}};
    else
        graphs = {{binary, four_users}};
    const ScenarioId scenario = table == TableId::scenario1_grid ? 1 : 3;

    std::vector<ExperimentConfig> out;
    for (const auto& topo : topologies) {
        for (const auto& [p, q] : edge_probs) {
            for (const auto& [offspring, users] : graphs) {
                ExperimentConfig cfg;
                ModelParams& m = cfg.params;
                m.offspring = offspring;
                m.users = users;
                // The reference grids label this radius "R = 3", counting the
                // root as a level; it is two offspring generations.
                m.radius = 2;
                m.p = p;
                m.q = q;
                m.cost_contract = CostSpec::lognormal(10000.0, topo.contract_sd);
                m.cost_user = CostSpec::lognormal(1000.0, topo.user_sd);
                std::array<double, 4> w{0.0, 0.0, 0.0, 0.0};
                w[scenario.index()] = 1.0;
                m.weights = ScenarioWeights(w);
                m.lambda = 1.0;
                m.t = 1.0;
                m.loading_delta = 0.1;

                cfg.cost_topology = topo.label;
                cfg.scenarios = {scenario};
                cfg.run_analytic = true;
                cfg.run_simulation = replications > 0;
                cfg.run.replications = replications > 0 ? replications : 1;
                cfg.run.seed = mix64(seed ^ ((out.size() + 1) * kGoldenGamma));
                cfg.run.workers = workers;
                out.push_back(std::move(cfg));
            }
        }
    }
    return out;
}

std::vector<ReportRow> reproduce_tables(TableId table, std::uint64_t replications,
                                        std::uint64_t seed, unsigned workers)
{
    std::vector<ReportRow> rows;
    for (const auto& cfg : table_configs(table, replications, seed, workers)) {
        auto r = run_experiment(cfg);
        rows.push_back(std::move(r.front()));
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows)
{
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    auto count = [](std::uint64_t v) { return std::to_string(v); };
    for (const auto& r : rows) {
        const std::array<std::string, 18> cells{
            csv_field(r.scenario),
            csv_field(r.offspring_pmf),
            csv_field(r.user_pmf),
            format_general(r.p),
            format_general(r.q),
            csv_field(r.cost_topology),
            optional_cell(r.analytic_mean, format_money),
            optional_cell(r.analytic_sd, format_money),
            optional_cell(r.sim_mean, format_money),
            optional_cell(r.sim_sd, format_money),
            optional_cell(r.sim_se_mean, format_money),
            optional_cell(r.replications, count),
            optional_cell(r.seed, count),
            optional_cell(r.degenerate_fraction, format_general),
            optional_cell(r.analytic_premium_expectation, format_money),
            optional_cell(r.analytic_premium_sd, format_money),
            optional_cell(r.sim_premium_expectation, format_money),
            optional_cell(r.sim_premium_sd, format_money),
        };
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        out << '\n';
    }
}

void write_csv(const std::string& path, const std::vector<ReportRow>& rows)
{
    if (path.empty() || path == "-") {
        write_csv(std::cout, rows);
        std::cout.flush();
        if (!std::cout) throw std::runtime_error("failed writing CSV to standard output");
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    write_csv(out, rows);
    out.flush();
    if (!out) throw std::runtime_error("failed writing CSV to '" + path + "'");
}

}  // namespace tsloss
