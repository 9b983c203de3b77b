#include "tsloss/percolation.hpp"

#include <stdexcept>

namespace tsloss {

namespace {

bool in_subset(const Cluster& c, Subset subset, const Vertex& v)
{
    switch (subset) {
    case Subset::all:
        return true;
    case Subset::all_except_origin:
        return !(v == c.origin);
    case Subset::root_star:
        return v.contract == kRoot;
    case Subset::contracts_only:
        return v.is_contract();
    }
    return false;
}

}  // namespace

EdgeSample sample_edges(const TreeStarsGraph& g, double p, double q, Rng& rng)
{
    if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("edge probabilities must lie in [0, 1]");
    EdgeSample e;
    e.contract_edge_open.resize(g.contract_edge_count());
    for (auto& open : e.contract_edge_open) open = bernoulli(rng, p);
    e.user_edge_open.resize(g.user_edge_count());
    for (auto& open : e.user_edge_open) open = bernoulli(rng, q);
    return e;
}

Cluster cluster(const TreeStarsGraph& g, const EdgeSample& edges, const Vertex& origin)
{
    if (!g.contains(origin)) throw std::invalid_argument("origin is not a vertex of the graph");
    if (edges.contract_edge_open.size() != g.contract_edge_count() ||
        edges.user_edge_open.size() != g.user_edge_count())
        throw std::invalid_argument("edge sample does not match the graph");

    const std::size_t n = g.contract_count();

    // Children in CSR form; parents are explicit.
    std::vector<std::size_t> child_begin(n + 1, 0);
    for (ContractIndex c = 1; c < n; ++c) ++child_begin[g.contract(c).parent + 1];
    for (std::size_t c = 0; c < n; ++c) child_begin[c + 1] += child_begin[c];
    std::vector<ContractIndex> children(n > 0 ? n - 1 : 0);
    {
        std::vector<std::size_t> fill(child_begin.begin(), child_begin.end() - 1);
        for (ContractIndex c = 1; c < n; ++c) children[fill[g.contract(c).parent]++] = c;
    }

    Cluster out;
    out.origin = origin;
    out.contract_compromised.assign(n, 0);
    out.user_compromised.assign(g.user_count(), 0);

    std::vector<ContractIndex> stack;
    if (origin.is_user()) {
        out.user_compromised[g.user_offset(origin.contract) + origin.slot] = 1;
        if (edges.user_edge(g, origin.contract, origin.slot)) stack.push_back(origin.contract);
    } else {
        stack.push_back(origin.contract);
    }
    for (auto c : stack) out.contract_compromised[c] = 1;

    while (!stack.empty()) {
        const ContractIndex c = stack.back();
        stack.pop_back();

        const std::size_t offset = g.user_offset(c);
        for (std::uint32_t s = 0; s < g.contract(c).users; ++s)
            if (edges.user_edge_open[offset + s]) out.user_compromised[offset + s] = 1;

        auto visit = [&](ContractIndex next) {
            if (!out.contract_compromised[next]) {
                out.contract_compromised[next] = 1;
                stack.push_back(next);
            }
        };
        if (c != kRoot && edges.contract_edge(c)) visit(g.contract(c).parent);
        for (std::size_t k = child_begin[c]; k < child_begin[c + 1]; ++k)
            if (edges.contract_edge(children[k])) visit(children[k]);
    }
    return out;
}

std::size_t restricted_size(const TreeStarsGraph& g, const Cluster& c, Subset subset)
{
    std::size_t count = 0;
    for (ContractIndex k = 0; k < g.contract_count(); ++k) {
        if (c.contract_compromised[k] && in_subset(c, subset, Vertex::contract_at(k))) ++count;
        if (subset == Subset::contracts_only) continue;
        const std::size_t offset = g.user_offset(k);
        for (std::uint32_t s = 0; s < g.contract(k).users; ++s)
            if (c.user_compromised[offset + s] && in_subset(c, subset, Vertex::user_at(k, s)))
                ++count;
    }
    return count;
}

double restricted_loss(const TreeStarsGraph& g, const Cluster& c, Subset subset,
                       std::span<const double> contract_costs, const CostSampler& user_cost,
                       Rng& rng)
{
    if (contract_costs.size() != g.contract_count())
        throw std::invalid_argument("one contract cost per contract is required");
    double loss = 0.0;
    for (ContractIndex k = 0; k < g.contract_count(); ++k) {
        if (c.contract_compromised[k] && in_subset(c, subset, Vertex::contract_at(k)))
            loss += contract_costs[k];
        if (subset == Subset::contracts_only) continue;
        const std::size_t offset = g.user_offset(k);
        for (std::uint32_t s = 0; s < g.contract(k).users; ++s)
            if (c.user_compromised[offset + s] && in_subset(c, subset, Vertex::user_at(k, s)))
                loss += user_cost(rng);
    }
    return loss;
}

}  // namespace tsloss
