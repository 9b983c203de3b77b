#include "tsloss/montecarlo.hpp"

#include <algorithm>
#include <exception>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "tsloss/scenarios.hpp"

namespace tsloss {

void MomentAccumulator::add(double x)
{
    const double n1 = static_cast<double>(n_);
    ++n_;
    const double n = static_cast<double>(n_);
    const double delta = x - mean_;
    const double delta_n = delta / n;
    const double delta_n2 = delta_n * delta_n;
    const double term1 = delta * delta_n * n1;
    mean_ += delta_n;
    m4_ += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2_ - 4.0 * delta_n * m3_;
    m3_ += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2_;
    m2_ += term1;
}

void MomentAccumulator::merge(const MomentAccumulator& other)
{
    if (other.n_ == 0 || n_ == 0) {
        const std::uint64_t degenerate = degenerate_ + other.degenerate_;
        if (n_ == 0) *this = other;
        degenerate_ = degenerate;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double n = na + nb;
    const double delta = other.mean_ - mean_;
    const double d2 = delta * delta;
    const double d3 = d2 * delta;
    const double d4 = d2 * d2;

    const double m2 = m2_ + other.m2_ + d2 * na * nb / n;
    const double m3 = m3_ + other.m3_ + d3 * na * nb * (na - nb) / (n * n) +
                      3.0 * delta * (na * other.m2_ - nb * m2_) / n;
    const double m4 = m4_ + other.m4_ + d4 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                      6.0 * d2 * (na * na * other.m2_ + nb * nb * m2_) / (n * n) +
                      4.0 * delta * (na * other.m3_ - nb * m3_) / n;

    mean_ += delta * nb / n;
    m2_ = m2;
    m3_ = m3;
    m4_ = m4;
    n_ += other.n_;
    degenerate_ += other.degenerate_;
}

double MomentAccumulator::variance() const noexcept
{
    if (n_ < 2) return 0.0;
    return std::max(0.0, m2_ / static_cast<double>(n_ - 1));
}

double MomentAccumulator::se_mean() const noexcept
{
    if (n_ < 2) return 0.0;
    return sd() / std::sqrt(static_cast<double>(n_));
}

double MomentAccumulator::se_sd() const noexcept
{
    if (n_ < 4) return 0.0;
    const double n = static_cast<double>(n_);
    const double s2 = variance();
    if (s2 <= 0.0) return 0.0;
    const double mu4 = m4_ / n;
    const double var_s2 = std::max(0.0, (mu4 - s2 * s2 * (n - 3.0) / (n - 1.0)) / n);
    return std::sqrt(var_s2) / (2.0 * std::sqrt(s2));
}

double MomentAccumulator::se_raw_second_moment() const noexcept
{
    if (n_ < 2) return 0.0;
    const double n = static_cast<double>(n_);
    const double m = mean_;
    const double c2 = m2_ / n, c3 = m3_ / n, c4 = m4_ / n;
    const double raw2 = c2 + m * m;
    const double raw4 = c4 + 4.0 * c3 * m + 6.0 * c2 * m * m + m * m * m * m;
    return std::sqrt(std::max(0.0, raw4 - raw2 * raw2) / n);
}

MomentAccumulator run_replications(const RunConfig& run,
                                   const std::function<ReplicationBody()>& make_body)
{
    if (run.replications == 0) throw std::invalid_argument("replications must be >= 1");
    if (run.workers == 0) throw std::invalid_argument("workers must be >= 1");

    const std::uint64_t blocks = (run.replications + kBlockSize - 1) / kBlockSize;
    std::vector<MomentAccumulator> partial(blocks);
    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(run.workers, blocks));

    std::vector<ReplicationBody> bodies;
    bodies.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) bodies.push_back(make_body());

    auto work = [&](unsigned worker) {
        ReplicationBody& body = bodies[worker];
        for (std::uint64_t b = worker; b < blocks; b += workers) {
            const std::uint64_t begin = b * kBlockSize;
            const std::uint64_t end = std::min(begin + kBlockSize, run.replications);
            MomentAccumulator acc;
            for (std::uint64_t i = begin; i < end; ++i) {
                Rng rng = substream(run.seed, i);
                body(i, rng, acc);
            }
            partial[b] = acc;
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        // A failing worker's exception is rethrown here once every thread has joined.
        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back([&, w] {
                    try {
                        work(w);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
        }
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    MomentAccumulator total;
    for (const auto& acc : partial) total.merge(acc);
    return total;
}

std::uint64_t scenario_seed(std::uint64_t seed, ScenarioId s)
{
    return mix64(seed ^ (static_cast<std::uint64_t>(s.value()) * kGoldenGamma));
}

namespace {

MomentAccumulator accumulate_scenario(const ModelParams& params, ScenarioId s,
                                      const RunConfig& run)
{
    return run_replications(run, [&]() -> ReplicationBody {
        auto sim = std::make_shared<ContagionSimulator>(params);
        return [sim, s](std::uint64_t, Rng& rng, MomentAccumulator& a) {
            const ContagionOutcome out = sim->run(s, rng);
            if (out.degenerate) a.add_degenerate();
            a.add(out.loss);
        };
    });
}

}  // namespace

ScenarioEstimate estimate_scenario(const ModelParams& params, ScenarioId s, const RunConfig& run)
{
    validate(params);
    const MomentAccumulator acc = accumulate_scenario(params, s, run);
    return {acc.mean(),
            acc.sd(),
            acc.se_mean(),
            acc.se_sd(),
            acc.se_raw_second_moment(),
            acc.degenerate_fraction(),
            acc.count()};
}

AggregateEstimate combine_scenario_estimates(
    const ModelParams& params, const std::array<std::optional<ScenarioEstimate>, 4>& per_scenario)
{
    const double rate = params.lambda * params.t;
    AggregateEstimate out;
    double variance = 0.0, se_mean2 = 0.0, se_var2 = 0.0, degenerate = 0.0;
    for (ScenarioId s : kAllScenarios) {
        const double w = params.weights[s];
        if (w <= 0.0) continue;
        const auto& est = per_scenario[s.index()];
        if (!est)
            throw std::invalid_argument("scenario " + std::to_string(s.value()) +
                                        " has positive weight but no estimate");
        const double k = rate * w;
        out.mean += k * est->mean;
        variance += k * (est->sd * est->sd + est->mean * est->mean);
        se_mean2 += k * k * est->se_mean * est->se_mean;
        se_var2 += k * k * est->se_raw_second_moment * est->se_raw_second_moment;
        degenerate += w * est->degenerate_fraction;
    }
    out.sd = std::sqrt(variance);
    out.se_mean = std::sqrt(se_mean2);
    out.se_sd = out.sd > 0.0 ? std::sqrt(se_var2) / (2.0 * out.sd) : 0.0;
    out.degenerate_fraction = degenerate;
    return out;
}

namespace {

AggregateEstimate aggregate_per_scenario(const ModelParams& params, const RunConfig& run)
{
    std::array<std::optional<ScenarioEstimate>, 4> estimates;
    for (ScenarioId s : kAllScenarios) {
        if (params.weights[s] <= 0.0) continue;
        RunConfig sub = run;
        sub.seed = scenario_seed(run.seed, s);
        estimates[s.index()] = estimate_scenario(params, s, sub);
    }
    return combine_scenario_estimates(params, estimates);
}

AggregateEstimate aggregate_direct(const ModelParams& params, const RunConfig& run)
{
    const double rate = params.lambda * params.t;
    struct EventCounts {
        std::uint64_t events = 0;
        std::uint64_t degenerate = 0;
    };
    std::vector<std::shared_ptr<EventCounts>> counts;

    const MomentAccumulator acc = run_replications(run, [&]() -> ReplicationBody {
        auto sim = std::make_shared<ContagionSimulator>(params);
        auto tally = std::make_shared<EventCounts>();
        counts.push_back(tally);
        return [sim, tally, rate, &params](std::uint64_t, Rng& rng, MomentAccumulator& a) {
            std::uint64_t events = 0;
            if (rate > 0.0) events = std::poisson_distribution<std::uint64_t>(rate)(rng);
            double total = 0.0;
            for (std::uint64_t e = 0; e < events; ++e) {
                const ScenarioId s = draw_scenario(params.weights, rng);
                const ContagionOutcome o = sim->run(s, rng);
                if (o.degenerate) ++tally->degenerate;
                total += o.loss;
            }
            tally->events += events;
            a.add(total);
        };
    });

    AggregateEstimate out{acc.mean(), acc.sd(), acc.se_mean(), acc.se_sd(), 0.0};
    std::uint64_t events = 0, degenerate = 0;
    for (const auto& c : counts) {
        events += c->events;
        degenerate += c->degenerate;
    }
    out.degenerate_fraction =
        events == 0 ? 0.0 : static_cast<double>(degenerate) / static_cast<double>(events);
    return out;
}

}  // namespace

AggregateEstimate estimate_aggregate(const ModelParams& params, const RunConfig& run)
{
    validate(params);
    return run.mode == AggregateMode::per_scenario ? aggregate_per_scenario(params, run)
                                                   : aggregate_direct(params, run);
}

}  // namespace tsloss
