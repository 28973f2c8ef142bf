#pragma once

#include <vector>

#include "svsparse/graph.hpp"

namespace svsparse {

// Partition of the edge set into simple cycles plus a small leftover forest.
// Entries are indices into G.edges; each cycle lists its edges in walk order.
struct CycleDecomposition {
    std::vector<std::vector<int>> cycles;
    std::vector<int> leftover;  // at most one per vertex
};

// Greedy stack walk over an undirected multigraph. Every edge lands in
// exactly one cycle or in leftover, |leftover| <= n, and runs in O(n + m).
// Parallel edges close length-2 cycles; self-loops close length-1 cycles.
CycleDecomposition cycle_decomp(const UndirectedGraph& G);

}  // namespace svsparse
