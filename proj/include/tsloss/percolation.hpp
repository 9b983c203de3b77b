#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tsloss/distributions.hpp"
#include "tsloss/graph.hpp"
#include "tsloss/random.hpp"

namespace tsloss {

/// Open/closed state of every edge of one graph.
struct EdgeSample {
    /// Entry c-1 is the edge between contract c (c >= 1) and its parent.
    std::vector<std::uint8_t> contract_edge_open;
    /// Entry user_offset(c) + s is the edge between contract c and its user s.
    std::vector<std::uint8_t> user_edge_open;

    bool contract_edge(ContractIndex child) const { return contract_edge_open[child - 1] != 0; }
    bool user_edge(const TreeStarsGraph& g, ContractIndex c, std::uint32_t slot) const
    {
        return user_edge_open[g.user_offset(c) + slot] != 0;
    }
};

/// Vertices joined to the origin by a path of open edges.
struct Cluster {
    Vertex origin;
    std::vector<std::uint8_t> contract_compromised;  // per contract
    std::vector<std::uint8_t> user_compromised;      // per flat user index

    bool contains(const TreeStarsGraph& g, const Vertex& v) const
    {
        return v.is_contract() ? contract_compromised[v.contract] != 0
                               : user_compromised[g.user_offset(v.contract) + v.slot] != 0;
    }
};

/// Vertex subsets over which compromised vertices are counted or costed.
enum class Subset : std::uint8_t {
    all,                ///< every vertex
    all_except_origin,  ///< every vertex but the origin
    root_star,          ///< the root contract and its users
    contracts_only,     ///< contracts, no users
};

/// Independent Bernoulli(p) contract edges then Bernoulli(q) user edges, in storage order.
EdgeSample sample_edges(const TreeStarsGraph& g, double p, double q, Rng& rng);

/// Open cluster of `origin`; throws std::invalid_argument if origin is not in g.
Cluster cluster(const TreeStarsGraph& g, const EdgeSample& edges, const Vertex& origin);

std::size_t restricted_size(const TreeStarsGraph& g, const Cluster& c, Subset subset);

/// Sum of vertex costs over compromised vertices of `subset`. Contracts use
/// the pre-sampled `contract_costs`; each compromised user takes a fresh draw.
double restricted_loss(const TreeStarsGraph& g, const Cluster& c, Subset subset,
                       std::span<const double> contract_costs, const CostSampler& user_cost,
                       Rng& rng);

}  // namespace tsloss
