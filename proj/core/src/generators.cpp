#include "psiscore/generators.hpp"

#include <random>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include <fmt/format.h>

namespace psiscore {

namespace {

using Edge = std::pair<NodeIndex, NodeIndex>;

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

NodeIndex below(std::mt19937_64& rng, std::size_t bound) {
    return static_cast<NodeIndex>(unit(rng) * static_cast<double>(bound));
}

void add_missing_leaders(std::size_t n, std::vector<Edge>& edges, std::mt19937_64& rng) {
    std::vector<bool> has_leader(n, false);
    for (const auto& [u, v] : edges) {
        has_leader[u] = true;
    }
    for (NodeIndex j = 0; j < n; ++j) {
        if (!has_leader[j]) {
            NodeIndex k = below(rng, n - 1);
            if (k >= j) ++k;
            edges.emplace_back(j, k);
        }
    }
}

void check_size(std::size_t n, bool leader_complete) {
    if (n == 0 || (leader_complete && n < 2)) {
        throw std::invalid_argument(fmt::format("cannot generate a graph on {} nodes", n));
    }
}

}  // namespace

DirectedGraph random_digraph(std::size_t n, double edge_prob, std::uint64_t seed,
                             bool leader_complete) {
    check_size(n, leader_complete);
    if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
        throw std::invalid_argument(fmt::format("edge probability {} not in [0, 1]", edge_prob));
    }
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    for (NodeIndex i = 0; i < n; ++i) {
        for (NodeIndex j = 0; j < n; ++j) {
            if (i != j && unit(rng) < edge_prob) {
                edges.emplace_back(i, j);
            }
        }
    }
    if (leader_complete) {
        add_missing_leaders(n, edges, rng);
    }
    return DirectedGraph::from_edges(n, edges);
}

DirectedGraph random_digraph_edges(std::size_t n, std::size_t m, std::uint64_t seed,
                                   bool leader_complete) {
    check_size(n, leader_complete);
    if (m > n * (n - 1)) {
        throw std::invalid_argument(fmt::format("{} edges do not fit on {} nodes", m, n));
    }
    std::mt19937_64 rng(seed);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(m * 2);
    std::vector<Edge> edges;
    edges.reserve(m + n);
    while (edges.size() < m) {
        const NodeIndex u = below(rng, n);
        const NodeIndex v = below(rng, n);
        if (u == v) continue;
        if (seen.insert((static_cast<std::uint64_t>(u) << 32) | v).second) {
            edges.emplace_back(u, v);
        }
    }
    if (leader_complete) {
        add_missing_leaders(n, edges, rng);
    }
    return DirectedGraph::from_edges(n, edges);
}

}  // namespace psiscore
