#include "tsloss/scenarios.hpp"

#include <algorithm>
#include <random>

namespace tsloss {

namespace {

std::size_t uniform_index(std::size_t n, Rng& rng)
{
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

constexpr std::uint32_t kBernoulliSumLimit = 64;

}  // namespace

std::uint32_t binomial_draw(std::uint32_t n, double prob, Rng& rng)
{
    if (prob <= 0.0 || n == 0) return 0;
    if (prob >= 1.0) return n;
    if (n <= kBernoulliSumLimit) {
        std::uint32_t k = 0;
        for (std::uint32_t i = 0; i < n; ++i) k += bernoulli(rng, prob) ? 1 : 0;
        return k;
    }
    return std::binomial_distribution<std::uint32_t>(n, prob)(rng);
}

OriginChoice origin_and_subset(const TreeStarsGraph& g, ScenarioId s, Rng& rng)
{
    switch (s.value()) {
    case 1:
        return {Vertex::contract_at(kRoot), Subset::all};
    case 2: {
        const auto n = g.contract(kRoot).users;
        if (n == 0) return {std::nullopt, Subset::all_except_origin};
        return {Vertex::user_at(kRoot, static_cast<std::uint32_t>(uniform_index(n, rng))),
                Subset::all_except_origin};
    }
    case 3: {
        const auto n = g.contract_count() - 1;
        if (n == 0) return {std::nullopt, Subset::root_star};
        return {Vertex::contract_at(static_cast<ContractIndex>(1 + uniform_index(n, rng))),
                Subset::root_star};
    }
    default: {
        const std::size_t first = g.contract(kRoot).users;
        const std::size_t n = g.user_count() - first;
        if (n == 0) return {std::nullopt, Subset::root_star};
        const std::size_t flat = first + uniform_index(n, rng);
        // Last contract whose offset is <= flat.
        ContractIndex lo = 1, hi = static_cast<ContractIndex>(g.contract_count() - 1);
        while (lo < hi) {
            const ContractIndex mid = lo + (hi - lo + 1) / 2;
            if (g.user_offset(mid) <= flat) lo = mid;
            else hi = mid - 1;
        }
        return {Vertex::user_at(lo, static_cast<std::uint32_t>(flat - g.user_offset(lo))),
                Subset::root_star};
    }
    }
}

ScenarioId draw_scenario(const ScenarioWeights& weights, Rng& rng)
{
    const double u = uniform01(rng);
    double acc = 0.0;
    int last_positive = 1;
    for (ScenarioId s : kAllScenarios) {
        if (weights[s] <= 0.0) continue;
        last_positive = s.value();
        acc += weights[s];
        if (u < acc) return s;
    }
    return last_positive;
}

ContagionSimulator::ContagionSimulator(const ModelParams& params)
    : params_(params), contract_cost_(params.cost_contract), user_cost_(params.cost_user)
{
    validate(params_);
}

double ContagionSimulator::star_loss(std::uint32_t users, Rng& rng)
{
    double loss = contract_cost_(rng);
    const std::uint32_t hit = binomial_draw(users, params_.q, rng);
    for (std::uint32_t i = 0; i < hit; ++i) loss += user_cost_(rng);
    return loss;
}

double ContagionSimulator::spread_below_root(Rng& rng)
{
    // Breadth-first storage puts every parent before its children.
    double loss = 0.0;
    const auto& contracts = graph_.contracts();
    compromised_.assign(contracts.size(), 0);
    compromised_[kRoot] = 1;
    for (std::size_t c = 1; c < contracts.size(); ++c) {
        if (!compromised_[contracts[c].parent] || !bernoulli(rng, params_.p)) continue;
        compromised_[c] = 1;
        loss += star_loss(contracts[c].users, rng);
    }
    return loss;
}

double ContagionSimulator::root_reached_from_outside(ContractIndex entry, Rng& rng)
{
    // The only path from `entry` to the root star climbs depth(entry) contract edges.
    for (std::uint32_t d = graph_.contract(entry).depth; d > 0; --d)
        if (!bernoulli(rng, params_.p)) return 0.0;
    return star_loss(graph_.contract(kRoot).users, rng);
}

ContagionOutcome ContagionSimulator::run(ScenarioId s, Rng& rng)
{
    generate_into(graph_, params_.offspring, params_.users, params_.radius, rng);
    ContagionOutcome out{0.0, s, false};

    switch (s.value()) {
    case 1:
        out.loss = star_loss(graph_.contract(kRoot).users, rng) + spread_below_root(rng);
        break;
    case 2: {
        const std::uint32_t n = graph_.contract(kRoot).users;
        if (n == 0) {
            out.degenerate = true;
            break;
        }
        // Users of the root are exchangeable, so the origin's slot is irrelevant.
        if (!bernoulli(rng, params_.q)) break;
        out.loss = star_loss(n - 1, rng) + spread_below_root(rng);
        break;
    }
    case 3: {
        const std::size_t n = graph_.contract_count() - 1;
        if (n == 0) {
            out.degenerate = true;
            break;
        }
        const auto origin = static_cast<ContractIndex>(1 + uniform_index(n, rng));
        out.loss = root_reached_from_outside(origin, rng);
        break;
    }
    case 4: {
        const auto choice = origin_and_subset(graph_, s, rng);
        if (!choice.origin) {
            out.degenerate = true;
            break;
        }
        if (!bernoulli(rng, params_.q)) break;
        out.loss = root_reached_from_outside(choice.origin->contract, rng);
        break;
    }
    }
    return out;
}

ContagionOutcome single_contagion(const ModelParams& params, ScenarioId s, Rng& rng)
{
    ContagionSimulator sim(params);
    return sim.run(s, rng);
}

ContagionOutcome single_contagion_reference(const ModelParams& params, ScenarioId s, Rng& rng)
{
    validate(params);
    const CostSampler contract_cost(params.cost_contract);
    const CostSampler user_cost(params.cost_user);

    const TreeStarsGraph g = generate(params.offspring, params.users, params.radius, rng);
    std::vector<double> contract_costs(g.contract_count());
    for (auto& c : contract_costs) c = contract_cost(rng);
    const EdgeSample edges = sample_edges(g, params.p, params.q, rng);

    const OriginChoice choice = origin_and_subset(g, s, rng);
    if (!choice.origin) return {0.0, s, true};
    const Cluster c = cluster(g, edges, *choice.origin);
    return {restricted_loss(g, c, choice.subset, contract_costs, user_cost, rng), s, false};
}

}  // namespace tsloss
