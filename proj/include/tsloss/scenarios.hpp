#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tsloss/distributions.hpp"
#include "tsloss/graph.hpp"
#include "tsloss/model.hpp"
#include "tsloss/percolation.hpp"
#include "tsloss/random.hpp"

namespace tsloss {

struct OriginChoice {
    std::optional<Vertex> origin;  // empty when the scenario's origin set is empty
    Subset subset = Subset::all;
};

/// Origin (uniform over the scenario's origin set) and loss subset.
OriginChoice origin_and_subset(const TreeStarsGraph& g, ScenarioId s, Rng& rng);

struct ContagionOutcome {
    double loss = 0.0;
    ScenarioId scenario = 1;
    bool degenerate = false;  // origin set was empty; loss is 0
};

ScenarioId draw_scenario(const ScenarioWeights& weights, Rng& rng);

/// Loss of one contagion, reusing scratch storage across calls.
///
/// Only edges that can matter are drawn: an edge is sampled when the
/// contagion has reached one of its endpoints, and the compromised users of
/// a compromised contract are counted as Binomial(users, q). The result has
/// the same distribution as the full edge-by-edge pipeline
/// (single_contagion_reference) but a different stream consumption.
class ContagionSimulator {
public:
    explicit ContagionSimulator(const ModelParams& params);

    ContagionOutcome run(ScenarioId s, Rng& rng);

    const TreeStarsGraph& last_graph() const noexcept { return graph_; }

private:
    double root_reached_from_outside(ContractIndex entry, Rng& rng);
    double star_loss(std::uint32_t users, Rng& rng);
    double spread_below_root(Rng& rng);

    ModelParams params_;
    CostSampler contract_cost_;
    CostSampler user_cost_;
    TreeStarsGraph graph_;
    std::vector<std::uint8_t> compromised_;
};

ContagionOutcome single_contagion(const ModelParams& params, ScenarioId s, Rng& rng);

/// Graph, contract costs, every edge, origin, cluster, restricted loss: each
/// step materialized through the graph and percolation modules.
ContagionOutcome single_contagion_reference(const ModelParams& params, ScenarioId s, Rng& rng);

/// Binomial(n, prob) draw.
std::uint32_t binomial_draw(std::uint32_t n, double prob, Rng& rng);

}  // namespace tsloss
