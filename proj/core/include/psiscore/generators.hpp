#pragma once

#include <cstddef>
#include <cstdint>

#include "psiscore/graph.hpp"

namespace psiscore {

/// Directed G(n, p): each ordered pair (i, j), i != j, is an edge with
/// probability `edge_prob`. With `leader_complete`, a node left without
/// leaders gets one drawn uniformly from the others.
DirectedGraph random_digraph(std::size_t n, double edge_prob, std::uint64_t seed,
                             bool leader_complete = false);

/// Directed graph with `m` distinct edges sampled uniformly, for sizes where
/// G(n, p) enumeration is too slow. Same `leader_complete` rule as above
/// (extra edges may push the count above m).
DirectedGraph random_digraph_edges(std::size_t n, std::size_t m, std::uint64_t seed,
                                   bool leader_complete = false);

}  // namespace psiscore
