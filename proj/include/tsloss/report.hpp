#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsloss/config.hpp"

namespace tsloss {

/// One CSV line: a scenario of one configuration, or the aggregate L_t.
struct ReportRow {
    std::string scenario;  // "1".."4" or "aggregate"
    std::string offspring_pmf;
    std::string user_pmf;
    double p = 0.0;
    double q = 0.0;
    std::string cost_topology;
    std::optional<double> analytic_mean;
    std::optional<double> analytic_sd;
    std::optional<double> sim_mean;
    std::optional<double> sim_sd;
    std::optional<double> sim_se_mean;
    std::optional<std::uint64_t> replications;
    std::optional<std::uint64_t> seed;
    std::optional<double> degenerate_fraction;
    // Loaded premiums; filled on the aggregate row only.
    std::optional<double> analytic_premium_expectation;
    std::optional<double> analytic_premium_sd;
    std::optional<double> sim_premium_expectation;
    std::optional<double> sim_premium_sd;
};

/// Fixed CSV header, in column order.
const std::vector<std::string>& csv_columns();

/// Rows for every scenario in cfg.scenarios, followed by the aggregate row.
/// Analytic cells without a closed form stay empty. Per-scenario simulations
/// use scenario_seed(cfg.run.seed, s).
std::vector<ReportRow> run_experiment(const ExperimentConfig& cfg);

enum class TableId { scenario1_grid = 2, scenario3_grid = 3 };

/// Experiment configurations of a reference table grid, in its row order:
/// cost topology I, II, III; then (p, q) in (0.8,0.8), (0.8,0.2), (0.2,0.8),
/// (0.2,0.2); then offspring/user pmf pairs. Radius is 2 generations below
/// the root (three levels counting the root). `replications == 0` disables
/// simulation.
std::vector<ExperimentConfig> table_configs(TableId table, std::uint64_t replications,
                                            std::uint64_t seed, unsigned workers);

/// One row per table configuration (no aggregate rows).
std::vector<ReportRow> reproduce_tables(TableId table, std::uint64_t replications,
                                        std::uint64_t seed, unsigned workers);

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows);

/// Writes to `path`, or to stdout when path is empty or "-". Throws
/// std::runtime_error naming the path on failure.
void write_csv(const std::string& path, const std::vector<ReportRow>& rows);

std::string format_pmf(const Pmf& pmf);
std::string topology_label(const CostSpec& contract, const CostSpec& user);

}  // namespace tsloss
