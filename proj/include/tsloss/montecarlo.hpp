#pragma once

#include <cmath>
#include <cstdint>
#include <array>
#include <functional>
#include <optional>

#include "tsloss/model.hpp"
#include "tsloss/random.hpp"

namespace tsloss {

/// Streaming mean and central moments up to order four.
///
/// Single values use the Welford/Terriberry update; partial accumulators are
/// combined with the pairwise formulas of Chan et al. and Pebay.
class MomentAccumulator {
public:
    void add(double x);
    void add_degenerate() { ++degenerate_; }
    void merge(const MomentAccumulator& other);

    std::uint64_t count() const noexcept { return n_; }
    std::uint64_t degenerate_count() const noexcept { return degenerate_; }
    double degenerate_fraction() const noexcept
    {
        return n_ == 0 ? 0.0 : static_cast<double>(degenerate_) / static_cast<double>(n_);
    }

    double mean() const noexcept { return mean_; }
    /// Unbiased sample variance; 0 for fewer than two values.
    double variance() const noexcept;
    double sd() const noexcept { return std::sqrt(variance()); }
    double se_mean() const noexcept;
    /// Large-sample standard error of sd(), from the fourth central moment.
    double se_sd() const noexcept;
    /// Standard error of the sample second raw moment (mean of x^2).
    double se_raw_second_moment() const noexcept;

    double m2() const noexcept { return m2_; }
    double m3() const noexcept { return m3_; }
    double m4() const noexcept { return m4_; }

private:
    std::uint64_t n_ = 0;
    std::uint64_t degenerate_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    double m3_ = 0.0;
    double m4_ = 0.0;
};

enum class AggregateMode { per_scenario, aggregate_direct };

struct RunConfig {
    std::uint64_t replications = 1'000'000;
    std::uint64_t seed = 42;
    unsigned workers = 1;
    AggregateMode mode = AggregateMode::per_scenario;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Replications are grouped in blocks of this size. Each block is
/// accumulated sequentially and the blocks are merged in index order, which
/// makes every estimate independent of the worker count.
inline constexpr std::uint64_t kBlockSize = 4096;

/// Runs `replications` calls of body(index, rng, acc) with rng = substream(seed, index).
/// `make_body` is called once per worker, on the calling thread, before any
/// replication runs.
using ReplicationBody = std::function<void(std::uint64_t, Rng&, MomentAccumulator&)>;
MomentAccumulator run_replications(const RunConfig& run,
                                   const std::function<ReplicationBody()>& make_body);

struct ScenarioEstimate {
    double mean = 0.0;
    double sd = 0.0;
    double se_mean = 0.0;
    double se_sd = 0.0;
    double se_raw_second_moment = 0.0;
    double degenerate_fraction = 0.0;
    std::uint64_t replications = 0;
};

ScenarioEstimate estimate_scenario(const ModelParams& params, ScenarioId s, const RunConfig& run);

struct AggregateEstimate {
    double mean = 0.0;
    double sd = 0.0;
    double se_mean = 0.0;
    double se_sd = 0.0;
    double degenerate_fraction = 0.0;  // fraction of contagion events with an empty origin set
};

/// Moments of L_t. In per-scenario mode each scenario with positive weight is
/// estimated separately (seed derived from run.seed and the scenario) and
/// combined through the compound Poisson identities; in aggregate-direct mode
/// every replication draws N_t ~ Poisson(lambda t) events, a scenario per
/// event, and sums the losses.
AggregateEstimate estimate_aggregate(const ModelParams& params, const RunConfig& run);

/// Compound Poisson combination of per-scenario estimates; every scenario
/// with positive weight must be present.
AggregateEstimate combine_scenario_estimates(
    const ModelParams& params, const std::array<std::optional<ScenarioEstimate>, 4>& per_scenario);

/// Seed used for scenario `s` in per-scenario mode.
std::uint64_t scenario_seed(std::uint64_t seed, ScenarioId s);

}  // namespace tsloss
