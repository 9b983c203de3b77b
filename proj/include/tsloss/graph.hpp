#pragma once

#include <cstdint>
#include <vector>

#include "tsloss/distributions.hpp"
#include "tsloss/random.hpp"

namespace tsloss {

using ContractIndex = std::uint32_t;

inline constexpr ContractIndex kRoot = 0;
inline constexpr ContractIndex kNoParent = static_cast<ContractIndex>(-1);

/// A vertex of the tree-stars graph: either a contract, or user `slot` of `contract`.
struct Vertex {
    enum class Kind : std::uint8_t { contract, user };

    Kind kind = Kind::contract;
    ContractIndex contract = kRoot;
    std::uint32_t slot = 0;

    static constexpr Vertex contract_at(ContractIndex c) { return {Kind::contract, c, 0}; }
    static constexpr Vertex user_at(ContractIndex c, std::uint32_t s) { return {Kind::user, c, s}; }

    bool is_contract() const noexcept { return kind == Kind::contract; }
    bool is_user() const noexcept { return kind == Kind::user; }

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Contract {
    ContractIndex parent = kNoParent;
    std::uint32_t depth = 0;
    std::uint32_t users = 0;
};

/// One realization of the random tree-stars graph.
///
/// Contracts are stored in breadth-first order with the root at index 0, so
/// every parent index is smaller than its children's. Users are kept as
/// per-contract counts and addressed as (contract, slot); the flat user index
/// of (c, s) is user_offset(c) + s.
class TreeStarsGraph {
public:
    TreeStarsGraph();

    std::size_t contract_count() const noexcept { return contracts_.size(); }
    std::size_t user_count() const noexcept { return user_offsets_.back(); }
    std::size_t vertex_count() const noexcept { return contract_count() + user_count(); }
    std::size_t contract_edge_count() const noexcept { return contract_count() - 1; }
    std::size_t user_edge_count() const noexcept { return user_count(); }

    const Contract& contract(ContractIndex c) const { return contracts_[c]; }
    const std::vector<Contract>& contracts() const noexcept { return contracts_; }

    std::size_t user_offset(ContractIndex c) const { return user_offsets_[c]; }
    std::uint32_t max_depth() const noexcept;

    bool contains(const Vertex& v) const noexcept;

    /// Appends a contract; `parent` must already exist.
    ContractIndex add_contract(ContractIndex parent, std::uint32_t users);
    void set_users(ContractIndex c, std::uint32_t users);

private:
    void rebuild_offsets();

    std::vector<Contract> contracts_;
    std::vector<std::size_t> user_offsets_;  // size contract_count() + 1

    friend void generate_into(TreeStarsGraph&, const Pmf&, const Pmf&, int, Rng&);
};

/// Breadth-first generation: contracts at depth < radius draw an offspring
/// count, contracts at depth == radius draw none, every contract draws a
/// user count. Draws happen in contract-index order, offspring count before
/// user count, so a seeded stream fixes the graph.
TreeStarsGraph generate(const Pmf& offspring, const Pmf& users, int radius, Rng& rng);

/// Same as generate(), reusing `out`'s storage.
void generate_into(TreeStarsGraph& out, const Pmf& offspring, const Pmf& users, int radius,
                   Rng& rng);

/// Deterministic d+-ary tree of the given radius with d- users per contract.
TreeStarsGraph regular_graph(int d_plus, int d_minus, int radius);

// Vertex sets used as contagion origins.
std::vector<Vertex> users_of_root(const TreeStarsGraph& g);
std::vector<Vertex> contracts_excluding_root(const TreeStarsGraph& g);
std::vector<Vertex> users_excluding_root_star(const TreeStarsGraph& g);

}  // namespace tsloss
