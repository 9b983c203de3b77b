#include "tsloss/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace tsloss {

TreeStarsGraph::TreeStarsGraph() : contracts_(1), user_offsets_{0, 0} {}

std::uint32_t TreeStarsGraph::max_depth() const noexcept
{
    // Breadth-first storage: the last contract is among the deepest.
    return contracts_.back().depth;
}

bool TreeStarsGraph::contains(const Vertex& v) const noexcept
{
    if (v.contract >= contracts_.size()) return false;
    return v.is_contract() || v.slot < contracts_[v.contract].users;
}

ContractIndex TreeStarsGraph::add_contract(ContractIndex parent, std::uint32_t users)
{
    if (parent >= contracts_.size()) throw std::invalid_argument("parent contract does not exist");
    const Contract& last = contracts_.back();
    if (contracts_.size() > 1 && parent < last.parent)
        throw std::invalid_argument("contracts must be added in breadth-first order");
    contracts_.push_back({parent, contracts_[parent].depth + 1, users});
    user_offsets_.push_back(user_offsets_.back() + users);
    return static_cast<ContractIndex>(contracts_.size() - 1);
}

void TreeStarsGraph::set_users(ContractIndex c, std::uint32_t users)
{
    contracts_.at(c).users = users;
    rebuild_offsets();
}

void TreeStarsGraph::rebuild_offsets()
{
    user_offsets_.resize(contracts_.size() + 1);
    user_offsets_[0] = 0;
    for (std::size_t c = 0; c < contracts_.size(); ++c)
        user_offsets_[c + 1] = user_offsets_[c] + contracts_[c].users;
}

void generate_into(TreeStarsGraph& out, const Pmf& offspring, const Pmf& users, int radius,
                   Rng& rng)
{
    if (radius < 0) throw std::invalid_argument("radius must be >= 0");
    const auto max_depth = static_cast<std::uint32_t>(radius);

    auto& contracts = out.contracts_;
    contracts.clear();
    contracts.push_back({kNoParent, 0, 0});
    for (std::size_t i = 0; i < contracts.size(); ++i) {
        const std::uint32_t depth = contracts[i].depth;
        if (depth < max_depth) {
            const int children = pmf_sample(offspring, rng);
            for (int k = 0; k < children; ++k)
                contracts.push_back({static_cast<ContractIndex>(i), depth + 1, 0});
        }
        contracts[i].users = static_cast<std::uint32_t>(pmf_sample(users, rng));
    }
    out.rebuild_offsets();
}

TreeStarsGraph generate(const Pmf& offspring, const Pmf& users, int radius, Rng& rng)
{
    TreeStarsGraph g;
    generate_into(g, offspring, users, radius, rng);
    return g;
}

TreeStarsGraph regular_graph(int d_plus, int d_minus, int radius)
{
    if (d_plus < 0 || d_minus < 0) throw std::invalid_argument("degrees must be >= 0");
    Rng unused(1, 2, 3, 4);
    return generate(Pmf::point(static_cast<std::size_t>(d_plus)),
                    Pmf::point(static_cast<std::size_t>(d_minus)), radius, unused);
}

std::vector<Vertex> users_of_root(const TreeStarsGraph& g)
{
    std::vector<Vertex> out;
    const auto n = g.contract(kRoot).users;
    out.reserve(n);
    for (std::uint32_t s = 0; s < n; ++s) out.push_back(Vertex::user_at(kRoot, s));
    return out;
}

std::vector<Vertex> contracts_excluding_root(const TreeStarsGraph& g)
{
    std::vector<Vertex> out;
    out.reserve(g.contract_count() - 1);
    for (ContractIndex c = 1; c < g.contract_count(); ++c) out.push_back(Vertex::contract_at(c));
    return out;
}

std::vector<Vertex> users_excluding_root_star(const TreeStarsGraph& g)
{
    std::vector<Vertex> out;
    out.reserve(g.user_count() - g.contract(kRoot).users);
    for (ContractIndex c = 1; c < g.contract_count(); ++c)
        for (std::uint32_t s = 0; s < g.contract(c).users; ++s) out.push_back(Vertex::user_at(c, s));
    return out;
}

}  // namespace tsloss
