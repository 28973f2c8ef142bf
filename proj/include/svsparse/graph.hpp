#pragma once

#include <optional>
#include <string>
#include <vector>

#include "svsparse/dyadic.hpp"

namespace svsparse {

struct Edge {
    int tail = 0;
    int head = 0;
    Dyadic w;

    bool operator==(const Edge& o) const {
        return tail == o.tail && head == o.head && w == o.w;
    }
};

// Directed multigraph with exact dyadic weights. Adjacency convention:
// A[head, tail] = total weight of arcs tail -> head, so columns index
// sources, A*1 sums in-degrees, 1^T*A sums out-degrees, and the walk matrix
// A*D_out^(-1) is column-stochastic.
struct WeightedDigraph {
    int n = 0;
    std::vector<Edge> edges;
    std::string name;

    bool operator==(const WeightedDigraph& o) const {
        return n == o.n && edges == o.edges;
    }
};

// Undirected multigraph; every edge is stored once with both endpoints.
// `side` (when non-empty) declares a bipartition; `left_count` is set when
// the vertex order is [left block][right block], which extract_directed
// requires to rebuild the digraph.
struct UndirectedGraph {
    int n = 0;
    std::vector<Edge> edges;  // tail/head reused as the two endpoints
    std::vector<int8_t> side; // empty, or side[v] in {0,1} with no internal edges
    int left_count = -1;
    std::string name;

    bool has_sides() const { return !side.empty(); }
};

// Digraph together with its shared in/out degree vector.
struct EulerianView {
    const WeightedDigraph* graph = nullptr;
    std::vector<Dyadic> degree;
};

struct EulerianViolation {
    int vertex = 0;
    Dyadic in_degree;
    Dyadic out_degree;
};

struct EulerianCheck {
    std::optional<EulerianView> view;       // set on success
    std::optional<EulerianViolation> violation;  // set on failure
    bool ok() const { return view.has_value(); }
};

// Exact dyadic degree sums.
std::pair<std::vector<Dyadic>, std::vector<Dyadic>> degrees(const WeightedDigraph& G);
std::vector<Dyadic> undirected_degrees(const UndirectedGraph& G);

// In-degree == out-degree at every vertex, exactly; the first offending
// vertex is reported as a normal value, not an exception.
EulerianCheck validate_eulerian(const WeightedDigraph& G);

// Undirected bipartite double cover of a digraph: left vertices [0, n) are
// the arc tails, right vertices [n, 2n) the arc heads; arc t->h becomes the
// edge {left-t, right-h} with the same weight. Degrees are (d_out; d_in).
UndirectedGraph bipartite_lift(const WeightedDigraph& G);

// Inverse of bipartite_lift for graphs that kept the [left][right] layout.
// Any weight inside either side is a hard error.
WeightedDigraph extract_directed(const UndirectedGraph& H);

// Every undirected edge as two opposing arcs (loops become single arcs).
WeightedDigraph symmetrize(const UndirectedGraph& H);

// Smallest t >= floor such that every weight is an integer multiple of
// 2^(-t).
int common_scale(const WeightedDigraph& G, int floor_scale = 0);
int common_scale(const UndirectedGraph& G, int floor_scale = 0);

// Sum of same-endpoint parallel edges, zero-weight edges dropped; canonical
// edge order. For undirected graphs endpoints are normalized (min, max) first.
WeightedDigraph coalesce(const WeightedDigraph& G);
UndirectedGraph coalesce(const UndirectedGraph& G);

Dyadic total_weight(const WeightedDigraph& G);
Dyadic total_weight(const UndirectedGraph& G);

// Verifies declared sides: throws BipartitionViolation if an edge lies
// inside one side. No-op when no sides are declared.
void check_sides(const UndirectedGraph& G);

// 2-coloring by BFS; nullopt if an odd cycle exists. Isolated vertices get
// side 0. Respects (and returns) declared sides when present.
std::optional<std::vector<int8_t>> bipartition(const UndirectedGraph& G);

}  // namespace svsparse
