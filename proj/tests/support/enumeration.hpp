#pragma once

// Exact loss moments on small regular tree-stars graphs by summing over every
// open/closed configuration of the edges. Shares no code with the analytic
// module; clusters are computed with a private union-find.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tsloss/distributions.hpp"

namespace tsloss::oracle {

struct Exact {
    long double mean = 0.0L;
    long double variance = 0.0L;
};

/// d_plus-ary tree of the given radius, contracts numbered breadth first,
/// d_minus users per contract. Vertices 0..n-1 are contracts; user s of
/// contract c is vertex n + c * d_minus + s.
struct SmallGraph {
    int d_plus = 0;
    int d_minus = 0;
    int radius = 0;
    std::vector<int> parent;                    // per contract; -1 for the root
    std::vector<std::array<int, 2>> edges;      // contract edges (child order), then user edges

    int contracts() const { return static_cast<int>(parent.size()); }
    int users() const { return contracts() * d_minus; }
    int user_vertex(int c, int s) const { return contracts() + c * d_minus + s; }
};

SmallGraph make_small_graph(int d_plus, int d_minus, int radius);

/// Per-vertex flag: joined to `origin` by open edges under edge mask `mask`.
std::vector<std::uint8_t> reachable(const SmallGraph& g, std::uint64_t mask, int origin);

/// Exact scenario moments (index 0..3 for scenarios 1..4); empty when the
/// scenario's origin set is empty. Contract and user costs enter through
/// their means and variances only, by conditioning on the cluster.
/// If `check` is non-null it is called with (mask, origin, reached) for every
/// configuration and origin visited, so callers can compare other cluster
/// implementations against this one.
using ClusterCheck = void (*)(void* ctx, std::uint64_t mask, int origin,
                              const std::vector<std::uint8_t>& reached);

std::array<std::optional<Exact>, 4> enumerate_moments(const SmallGraph& g, double p, double q,
                                                      const CostSpec& contract_cost,
                                                      const CostSpec& user_cost,
                                                      ClusterCheck check = nullptr,
                                                      void* ctx = nullptr);

}  // namespace tsloss::oracle
