#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "svsparse/graph.hpp"
#include "svsparse/sparsify.hpp"

namespace svsparse {

// Auxiliary expander on [d] given by its neighbor table; used to subsample
// the complete bipartite graph a squaring operation places at each vertex.
struct ExpanderSpec {
    int d = 0;  // vertex count; must match the degree of the squared graph
    int c = 0;  // regularity
    std::vector<std::vector<int>> table;  // table[i][j] = j-th neighbor of i
    double lambda = 0.0;  // certified second singular value of the walk matrix
};

// Union of c seeded random permutations of [d]; regenerates until the dense
// certificate lambda <= lambda_target holds (SparsifyFailure after max_tries).
ExpanderSpec make_expander(int d, int c, uint64_t seed, double lambda_target = 1.0,
                           int max_tries = 64);
// Complete graph with self loops: table[i][j] = j, lambda = 0.
ExpanderSpec complete_expander(int d);

// Adds edges supplying each vertex's missing in/out mass (targets minus
// current degrees, all nonnegative with equal totals) via a deterministic
// two-pointer greedy matching; at most 2n edges are added.
WeightedDigraph patch_to_degrees(const WeightedDigraph& G,
                                 const std::vector<Dyadic>& din_target,
                                 const std::vector<Dyadic>& dout_target);

// Adjacency A2 D^+ A1 (walk first through G1, then G2), with the shared
// degree vector D preserved exactly. Weights divide exactly when possible;
// otherwise every product weight is floored to a fine common grid and the
// degree shortfalls are patched.
WeightedDigraph exact_product(const WeightedDigraph& G1, const WeightedDigraph& G2);

// Two G-steps with an expander step on the in-edge label in between:
// for each vertex v and out-slot i, traverse to u arriving on in-slot j,
// then for each t traverse u's out-slot table[j][t]. Output is dc-regular
// both ways whenever H's table columns are permutations.
WeightedDigraph derandomized_square(const WeightedDigraph& G, const ExpanderSpec& H);

// exact_product followed by sv_sparsify_digraph(eps).
WeightedDigraph sparsify_product(double eps, const WeightedDigraph& G1,
                                 const WeightedDigraph& G2, uint64_t seed,
                                 const SparsifyOptions& opts = {});

// Coalesce, floor every weight to a multiple of 2^-t, and patch the degree
// shortfalls so in/out degrees are restored exactly (patch weights are finer
// than the grid when the degrees are). The output has at most m + 2n edges
// and ||A_H - A_G|| <= 2n * 2^-t.
WeightedDigraph fix_edge_weights(int t, const WeightedDigraph& G);

struct PowerStage {
    std::string kind;        // "base" | "square" | "multiply"
    double budget = 0.0;
    double measured = -1.0;  // dense epsilon vs the stage's exact target, -1 if unchecked
    double sigma2 = -1.0;    // post-stage second normalized singular value, -1 if unchecked
    long edges = 0;
};

struct PowerPlan {
    long ell = 0;
    std::vector<int> bits;  // binary expansion of ell, most significant first
    double eps = 0.0;
    int stage_count = 0;     // squarings + multiplications
    double stage_budget = 0.0;  // eps/(2 * stage_count), split 3 ways inside
    int l = 0;               // weight grid exponent for fix_edge_weights
    std::vector<PowerStage> stages;
};

struct PowerResult {
    WeightedDigraph graph;
    PowerPlan plan;
};

// Left-to-right binary powering over sparsified squares and multiplies:
// G1 = sv_sparsify_digraph(eps/2, G); each later bit costs one squaring
// (plus one multiplication by G1 when set), each realized as
// sparsify_product -> fix_edge_weights -> sv_sparsify_digraph on equal
// sub-budgets. Degrees are preserved exactly throughout.
PowerResult sparsify_power(double eps, const WeightedDigraph& G, long ell, double tau,
                           uint64_t seed, const SparsifyOptions& opts = {});

}  // namespace svsparse
