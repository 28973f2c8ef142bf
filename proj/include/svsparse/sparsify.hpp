#pragma once

#include <cstdint>

#include "svsparse/graph.hpp"
#include "svsparse/rng.hpp"

namespace svsparse {

struct SparsifyOptions {
    // Sampling threshold: a stage samples only when
    // delta >= sqrt(c * n * ln(n) / m); below that it returns its input.
    double c = 16.0;
    double phi = 0.05;    // expander partition target gap
    bool verify = true;   // dense self-check when n <= oracle_cap()
    int max_retries = 16; // resamples before SparsifyFailure
    int max_rounds = 0;   // sparsify_graph rounds; 0 means ceil(log2 n)
};

// One sampling stage on an unweighted (all weights 1) bipartite multigraph.
// Edges at vertices of degree <= m/2n and the leftover of a cycle
// decomposition are kept at weight 1; each cycle keeps alternate edges at
// weight 2 by a fair coin, so every degree is preserved exactly. The result
// is verified against delta * D and resampled on failure.
UndirectedGraph sparsify_cycle_unweighted(double delta, const UndirectedGraph& G,
                                          Rng& rng, const SparsifyOptions& opts = {});

// Bucket the edges by weight 2^i (i <= b), expander-partition each bucket,
// keep crossing edges verbatim, and run the unweighted stage inside each
// part with delta = eps * phi^2. Output weights lie in {1, ..., 2^(b+1)}.
UndirectedGraph sparsify_cycle(double eps, int b, const UndirectedGraph& G,
                               double phi, Rng& rng, const SparsifyOptions& opts = {});

// Repeated rounds of binary weight expansion + sparsify_cycle at eps/(2t),
// coalescing after each round; stops early when a round stops shrinking.
// Degrees and the declared bipartition are preserved exactly.
UndirectedGraph sparsify_graph(double eps, const UndirectedGraph& G, Rng& rng,
                               const SparsifyOptions& opts = {});

// Directed wrapper: rescale weights to integers, lift to the bipartite
// double cover, sparsify, extract back, undo the scaling. In- and
// out-degrees are preserved exactly.
WeightedDigraph sv_sparsify_digraph(double eps, const WeightedDigraph& G,
                                    uint64_t seed, const SparsifyOptions& opts = {});

}  // namespace svsparse
