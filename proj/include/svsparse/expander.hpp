#pragma once

#include <vector>

#include "svsparse/graph.hpp"

namespace svsparse {

// Partition of the vertex set such that every part, as an induced subgraph,
// has second-largest normalized-adjacency eigenvalue at most 1 - phi.
struct ExpanderPartition {
    std::vector<std::vector<int>> parts;
    std::vector<int> crossing;  // indices of edges joining distinct parts
    double phi = 0.0;
    double crossing_fraction = 0.0;  // |crossing| / m, measured
};

// Signed second-largest eigenvalue of D^{-1/2} A D^{-1/2} restricted to the
// given vertices (-1 when fewer than two vertices). Zero-degree rows stay
// zero.
double second_eigenvalue_normalized(const UndirectedGraph& G,
                                    const std::vector<int>& vertices);
double second_eigenvalue_normalized(const UndirectedGraph& G);

// Recursive spectral bisection: split along the sweep cut of the second
// eigenvector (ordered by D^{-1/2} u) until every part certifies the
// eigenvalue bound. Zero-degree vertices become singletons. Throws
// PartitionFailure if recursion exceeds its depth budget.
ExpanderPartition expander_partition(const UndirectedGraph& G, double phi = 0.05);

}  // namespace svsparse
