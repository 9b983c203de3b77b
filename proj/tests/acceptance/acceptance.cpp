// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "enumeration.hpp"
#include "reference_tables.hpp"
#include "tsloss/analytic.hpp"
#include "tsloss/montecarlo.hpp"
#include "tsloss/report.hpp"

using namespace tsloss;

namespace {

// Tolerances.
constexpr double kPrintedTolerance = 0.01;      // absolute, two-decimal printed values
constexpr double kAnalyticRuntimeLimit = 1.0;   // seconds, analytic Table 2
constexpr double kRelativeSimTolerance = 0.01;  // 10^7 replications vs formulas
constexpr double kStandardErrors = 4.0;         // 10^6 replications vs formulas
constexpr double kEnumerationTolerance = 1e-10;
constexpr double kCriticalTolerance = 1e-9;
constexpr double kSingleThreadLimit = 10.0;     // seconds, 10^6 replications, 1 worker
constexpr double kEightWorkerLimit = 30.0;      // seconds, 10^7 replications, 8 workers
constexpr std::size_t kMaxEnumeratedEdges = 12;

constexpr std::uint64_t kLargeReps = 10'000'000;
constexpr std::uint64_t kSmallReps = 1'000'000;
constexpr std::uint64_t kSeed = 42;
constexpr std::uint64_t kSmallSeed = 1042;
constexpr unsigned kWorkers = 8;

int failures = 0;

void report(int id, bool pass, const std::string& title, const std::string& detail)
{
    std::printf("%s  criterion %d: %s -- %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c, d);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double rel(double a, double b)
{
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

struct RowRun {
    ScenarioEstimate large;
    ScenarioEstimate small;
    MomentPair exact;
};

// Independent recursion for the critical check: T_r = 1 + sum of m copies of T_{r-1}.
MomentPair recursion_oracle(double mu, double s2, double p, int radius)
{
    const long double m = static_cast<long double>(mu) * p;
    const long double v = static_cast<long double>(p) * (1 - p) * mu + static_cast<long double>(p) * p * s2;
    long double e = 1, var = 0;
    for (int r = 1; r <= radius; ++r) {
        var = m * var + v * e * e;
        e = 1 + m * e;
    }
    return {static_cast<double>(e), static_cast<double>(var)};
}

std::vector<RowRun> simulate_grid(TableId table, const std::vector<ExperimentConfig>& configs)
{
    std::vector<RowRun> runs;
    std::size_t row = 0;
    for (const auto& cfg : configs) {
        const ScenarioId s = cfg.scenarios.front();
        RunConfig large = cfg.run;
        large.replications = kLargeReps;
        large.workers = kWorkers;
        RunConfig small = large;
        small.replications = kSmallReps;
        small.seed = mix64(kSmallSeed ^ ((row + 1) * kGoldenGamma));
        RowRun r;
        r.large = estimate_scenario(cfg.params, s, large);
        r.small = estimate_scenario(cfg.params, s, small);
        r.exact = *scenario_moments(cfg.params)[s.index()];
        runs.push_back(r);
        ++row;
    }
    std::printf("      simulated table %d: %zu rows\n", static_cast<int>(table), runs.size());
    return runs;
}

}  // namespace

int main()
{
    // Criterion 1: analytic Table 2, topologies I and II.
    const auto t0 = std::chrono::steady_clock::now();
    const auto table2 = reproduce_tables(TableId::scenario1_grid, 0, kSeed, 1);
    const double analytic_seconds = seconds_since(t0);
    {
        double worst = 0.0;
        bool shape = table2.size() == reference::kTable2.size();
        for (std::size_t i = 0; shape && i < 32; ++i) {
            worst = std::max(worst, std::abs(*table2[i].analytic_mean - reference::kTable2[i].analytic_mean));
            worst = std::max(worst, std::abs(*table2[i].analytic_sd - reference::kTable2[i].analytic_sd));
        }
        report(1, shape && worst <= kPrintedTolerance && analytic_seconds < kAnalyticRuntimeLimit,
               "analytic Table 2, topologies I-II (32 rows)",
               fmt("max |error| %.4f (limit %.2f); 48-row grid in %.4f s (limit %.0f s)", worst,
                   kPrintedTolerance, analytic_seconds, kAnalyticRuntimeLimit));
    }

    // Simulations shared by criteria 2 and 4.
    const auto sim_start = std::chrono::steady_clock::now();
    const auto configs2 = table_configs(TableId::scenario1_grid, kLargeReps, kSeed, kWorkers);
    const auto configs3 = table_configs(TableId::scenario3_grid, kLargeReps, kSeed, kWorkers);
    const auto runs2 = simulate_grid(TableId::scenario1_grid, configs2);
    const auto runs3 = simulate_grid(TableId::scenario3_grid, configs3);
    std::printf("      grid simulations took %.1f s\n", seconds_since(sim_start));

    // Criterion 2: topology III. Means match the printed analytic column; the
    // deviations include the user-cost variance, so they differ from the
    // printed analytic column and agree with the printed simulation column
    // within Monte Carlo error of a 10^7 run.
    {
        double worst_mean = 0.0, min_gap = 1e300, worst_z = 0.0, worst_rel = 0.0;
        for (std::size_t i = 32; i < 48; ++i) {
            const auto& pub = reference::kTable2[i];
            const double sd = *table2[i].analytic_sd;
            worst_mean = std::max(worst_mean, std::abs(*table2[i].analytic_mean - pub.analytic_mean));
            min_gap = std::min(min_gap, sd - pub.analytic_sd);
            const double se = runs2[i].large.se_sd;
            worst_z = std::max(worst_z, std::abs(sd - pub.sim_sd) / se);
            worst_rel = std::max(worst_rel, rel(sd, pub.sim_sd));
        }
        const bool pass = worst_mean <= kPrintedTolerance && min_gap > kPrintedTolerance &&
                          worst_z <= kStandardErrors;
        report(2, pass, "Table 2 topology III (16 rows)",
               fmt("max mean |error| %.4f; deviations exceed the printed analytic ones by >= %.2f; "
                   "vs printed simulation: max %.2f SE (limit 4), max relative %.4f%%",
                   worst_mean, min_gap, worst_z, 100.0 * worst_rel) +
                   fmt("; row 1 formula %.2f vs printed analytic %.2f / simulation %.2f",
                       *table2[32].analytic_sd, reference::kTable2[32].analytic_sd,
                       reference::kTable2[32].sim_sd));
    }

    // Criterion 3: analytic Table 3.
    {
        const auto table3 = reproduce_tables(TableId::scenario3_grid, 0, kSeed, 1);
        double worst = 0.0;
        const bool shape = table3.size() == reference::kTable3.size();
        for (std::size_t i = 0; shape && i < table3.size(); ++i) {
            worst = std::max(worst, std::abs(*table3[i].analytic_mean - reference::kTable3[i].analytic_mean));
            worst = std::max(worst, std::abs(*table3[i].analytic_sd - reference::kTable3[i].analytic_sd));
        }
        report(3, shape && worst <= kPrintedTolerance, "analytic Table 3 (12 rows)",
               fmt("max |error| %.4f (limit %.2f)", worst, kPrintedTolerance));
    }

    // Criterion 4: simulation vs formulas, plus runtime targets.
    {
        double worst_rel = 0.0, worst_z = 0.0;
        for (const auto* runs : {&runs2, &runs3}) {
            for (const auto& r : *runs) {
                worst_rel = std::max({worst_rel, rel(r.large.mean, r.exact.mean), rel(r.large.sd, r.exact.sd())});
                worst_z = std::max({worst_z, std::abs(r.small.mean - r.exact.mean) / r.small.se_mean,
                                    std::abs(r.small.sd - r.exact.sd()) / r.small.se_sd});
            }
        }
        const ModelParams& row1 = configs2[0].params;
        auto t = std::chrono::steady_clock::now();
        estimate_scenario(row1, 1, {kSmallReps, kSeed, 1, AggregateMode::per_scenario});
        const double single = seconds_since(t);
        t = std::chrono::steady_clock::now();
        estimate_scenario(row1, 1, {kLargeReps, kSeed, 8, AggregateMode::per_scenario});
        const double eight = seconds_since(t);
        const bool pass = worst_rel <= kRelativeSimTolerance && worst_z <= kStandardErrors &&
                          single < kSingleThreadLimit && eight < kEightWorkerLimit;
        report(4, pass, "simulation vs formulas (60 rows)",
               fmt("10^7: max relative error %.4f%% (limit 1%%); 10^6: max %.2f SE (limit 4); ",
                   100.0 * worst_rel, worst_z) +
                   fmt("10^6 x 1 worker %.2f s (limit 10 s); 10^7 x 8 workers %.2f s (limit 30 s)",
                       single, eight));
    }

    // Criterion 5: exhaustive enumeration.
    {
        int graphs = 0, comparisons = 0;
        double worst = 0.0;
        for (int d_plus = 1; d_plus <= 2; ++d_plus)
            for (int d_minus = 0; d_minus <= 2; ++d_minus)
                for (int radius = 1; radius <= 2; ++radius) {
                    const auto g = oracle::make_small_graph(d_plus, d_minus, radius);
                    if (g.edges.size() > kMaxEnumeratedEdges) continue;
                    ++graphs;
                    for (double p : {0.3, 0.7})
                        for (double q : {0.3, 0.7}) {
                            ModelParams m;
                            m.offspring = Pmf::point(static_cast<std::size_t>(d_plus));
                            m.users = Pmf::point(static_cast<std::size_t>(d_minus));
                            m.radius = radius;
                            m.p = p;
                            m.q = q;
                            const auto exact = oracle::enumerate_moments(g, p, q, m.cost_contract, m.cost_user);
                            const auto closed = scenario_moments(m);
                            for (int s = 0; s < 4; ++s) {
                                if (exact[s].has_value() != closed[s].has_value()) {
                                    worst = 1.0;
                                    continue;
                                }
                                if (!exact[s]) continue;
                                worst = std::max({worst, rel(closed[s]->mean, static_cast<double>(exact[s]->mean)),
                                                  rel(closed[s]->variance, static_cast<double>(exact[s]->variance))});
                                ++comparisons;
                            }
                        }
                }
        report(5, worst <= kEnumerationTolerance && graphs == 10,
               "closed forms vs exhaustive enumeration",
               fmt("%.0f graphs with <= 12 edges, %.0f scenario comparisons, max relative error %.2e "
                   "(limit 1e-10)",
                   graphs, comparisons, worst));
    }

    // Criterion 6: critical regime mu_plus p = 1.
    {
        bool exact_mean = true;
        double worst = 0.0;
        for (int radius = 0; radius <= 6; ++radius) {
            const auto m = branching_moments(2.0, 0.0, 0.5, radius);
            exact_mean = exact_mean && m.mean == radius + 1.0;
            worst = std::max(worst, rel(m.variance, recursion_oracle(2.0, 0.0, 0.5, radius).variance));
        }
        report(6, exact_mean && worst <= kCriticalTolerance, "critical branching (mu+ = 2, p = 0.5, R <= 6)",
               std::string(exact_mean ? "means equal R+1 exactly" : "mean differs from R+1") +
                   fmt("; max relative variance error %.2e (limit 1e-9)", worst));
    }

    // Criterion 7: determinism across worker counts.
    {
        const ModelParams& row1 = configs2[0].params;
        std::vector<double> means, direct;
        ModelParams mixed = row1;
        mixed.weights = ScenarioWeights({0.25, 0.25, 0.25, 0.25});
        for (unsigned w : {1u, 4u, 8u}) {
            means.push_back(estimate_scenario(row1, 1, {100000, 42, w, AggregateMode::per_scenario}).mean);
            direct.push_back(estimate_aggregate(mixed, {100000, 42, w, AggregateMode::aggregate_direct}).mean);
        }
        const bool same = means[0] == means[1] && means[0] == means[2] && direct[0] == direct[1] &&
                          direct[0] == direct[2];
        report(7, same, "bit-identical means for 1, 4, 8 workers (seed 42, 10^5 replications)",
               fmt("scenario 1 mean %.6f / %.6f / %.6f", means[0], means[1], means[2]) +
                   fmt("; aggregate-direct mean %.6f / %.6f / %.6f", direct[0], direct[1], direct[2]));
    }

    // Criterion 8: scenario 2 on the Table 2 row-1 parameters.
    {
        const ModelParams& row1 = configs2[0].params;
        const double q = row1.q, e = row1.cost_user.mean;
        const double mu1 = 68112.0;
        const double mu2_derived = q * (mu1 - q * e);  // 53849.6
        const auto s1 = scenario1_moments(row1);
        const double lemma_var =
            q * (s1.variance - q * (1 - q) * e * e) + q * (1 - q) * (s1.mean - q * e) * (s1.mean - q * e);
        const auto s2 = scenario2_moments(row1);
        const auto sim = estimate_scenario(row1, 2, {kSmallReps, kSeed, 1, AggregateMode::per_scenario});
        const double z_mean = std::abs(sim.mean - s2.mean) / sim.se_mean;
        const double z_sd = std::abs(sim.sd - s2.sd()) / sim.se_sd;
        const bool pass = std::abs(s2.mean - mu2_derived) < 1e-9 && rel(s2.variance, lemma_var) < 1e-12 &&
                          z_mean <= kStandardErrors && z_sd <= kStandardErrors;
        report(8, pass, "scenario 2 cross-check (10^6 replications)",
               fmt("analytic mean %.2f (derived %.2f), sd %.2f; simulated %.2f", s2.mean, mu2_derived, s2.sd(),
                   sim.mean) +
                   fmt(" / %.2f; %.2f SE and %.2f SE (limit 4)", sim.sd, z_mean, z_sd));
    }

    // Criterion 9: direct aggregate simulation vs combined per-scenario moments.
    {
        ModelParams m = configs2[0].params;
        m.weights = ScenarioWeights({0.25, 0.25, 0.25, 0.25});
        m.lambda = 1.0;
        m.t = 1.0;
        const auto exact = aggregate_moments(m.lambda, m.t, m.weights, scenario_moments(m));
        const auto direct = estimate_aggregate(m, {kSmallReps, kSeed, 1, AggregateMode::aggregate_direct});
        const auto combined = estimate_aggregate(m, {kSmallReps, kSeed, 1, AggregateMode::per_scenario});
        const double z_mean = std::abs(direct.mean - exact.mean) / direct.se_mean;
        const double z_sd = std::abs(direct.sd - exact.sd()) / direct.se_sd;
        const double z_cross = std::abs(direct.mean - combined.mean) /
                               std::hypot(direct.se_mean, combined.se_mean);
        report(9, z_mean <= kStandardErrors && z_sd <= kStandardErrors && z_cross <= kStandardErrors,
               "aggregate identity, Q uniform, lambda t = 1 (10^6 replications)",
               fmt("direct mean %.2f sd %.2f vs combined %.2f / %.2f", direct.mean, direct.sd, exact.mean,
                   exact.sd()) +
                   fmt("; %.2f SE and %.2f SE; direct vs simulated per-scenario %.2f SE (limit 4)", z_mean,
                       z_sd, z_cross));
    }

    std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
