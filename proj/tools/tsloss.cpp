// Command-line front end: analytic moments, simulation and table grids as CSV.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tsloss/config.hpp"
#include "tsloss/report.hpp"

namespace {

struct Overrides {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> reps;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    int table = 2;
};

// TSLOSS_WORKERS applies when --workers is not given on the command line.
std::optional<unsigned> env_workers()
{
    const char* v = std::getenv("TSLOSS_WORKERS");
    if (v == nullptr || *v == '\0') return std::nullopt;
    char* end = nullptr;
    const unsigned long n = std::strtoul(v, &end, 10);
    if (*end != '\0' || n < 1 || n > 1024)
        throw std::runtime_error(std::string("TSLOSS_WORKERS must be an integer in [1, 1024], got '") +
                                 v + "'");
    return static_cast<unsigned>(n);
}

unsigned resolve_workers(const Overrides& o, unsigned fallback)
{
    if (o.workers) return *o.workers;
    if (auto env = env_workers()) return *env;
    return fallback;
}

tsloss::ExperimentConfig load(const Overrides& o)
{
    tsloss::ExperimentConfig cfg = tsloss::load_config(o.config);
    if (o.reps) cfg.run.replications = *o.reps;
    if (o.seed) cfg.run.seed = *o.seed;
    cfg.run.workers = resolve_workers(o, cfg.run.workers);
    return cfg;
}

std::string output_path(const Overrides& o, const tsloss::ExperimentConfig* cfg)
{
    if (!o.out.empty()) return o.out;
    return cfg ? cfg->output : std::string();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Aggregate contagion loss on random tree-stars graphs"};
    app.require_subcommand(1);
    Overrides o;

    auto add_run_flags = [&o](CLI::App* cmd) {
        cmd->add_option("--reps", o.reps, "Monte Carlo replications")->check(CLI::Range(1ull, 1ull << 40));
        cmd->add_option("--seed", o.seed, "Master seed");
        cmd->add_option("--workers", o.workers, "Worker threads (env TSLOSS_WORKERS)")
            ->check(CLI::Range(1u, 1024u));
    };

    auto* analytic = app.add_subcommand("analytic", "Closed-form moments for a configuration");
    analytic->add_option("--config", o.config, "JSON configuration")->required();
    analytic->add_option("--out", o.out, "CSV output path (default: config output or stdout)");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates (plus analytic columns)");
    simulate->add_option("--config", o.config, "JSON configuration")->required();
    simulate->add_option("--out", o.out, "CSV output path (default: config output or stdout)");
    add_run_flags(simulate);

    auto* tables = app.add_subcommand("tables", "Reproduce a reference parameter grid");
    tables->add_option("--table", o.table, "Grid to reproduce")->check(CLI::IsMember({2, 3}));
    tables->add_option("--out", o.out, "CSV output path (default: stdout)");
    add_run_flags(tables);
    tables->footer("Without --reps only the analytic columns are filled.");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analytic->parsed()) {
            auto cfg = load(o);
            cfg.run_analytic = true;
            cfg.run_simulation = false;
            tsloss::write_csv(output_path(o, &cfg), tsloss::run_experiment(cfg));
        } else if (simulate->parsed()) {
            auto cfg = load(o);
            cfg.run_simulation = true;
            tsloss::write_csv(output_path(o, &cfg), tsloss::run_experiment(cfg));
        } else {
            const auto id = o.table == 2 ? tsloss::TableId::scenario1_grid
                                         : tsloss::TableId::scenario3_grid;
            const auto rows =
                tsloss::reproduce_tables(id, o.reps.value_or(0), o.seed.value_or(42),
                                         resolve_workers(o, 1));
            tsloss::write_csv(output_path(o, nullptr), rows);
        }
    } catch (const std::exception& e) {
        std::cerr << "tsloss: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
