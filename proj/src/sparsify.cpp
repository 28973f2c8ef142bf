#include "svsparse/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "svsparse/cycles.hpp"
#include "svsparse/dense.hpp"
#include "svsparse/errors.hpp"
#include "svsparse/expander.hpp"

namespace svsparse {

namespace {

// ||D^{+/2} (A_H - A_G) D^{+/2}|| with D = diag of G's degrees.
double diag_measure(const UndirectedGraph& H, const UndirectedGraph& G) {
    const Md delta = adjacency(H) - adjacency(G);
    const Vd d = degree_vector(G);
    Md M = delta;
    for (int v = 0; v < G.n; ++v) {
        const double s = d(v) > 0.0 ? 1.0 / std::sqrt(d(v)) : 0.0;
        M.row(v) *= s;
        M.col(v) *= s;
    }
    return spectral_norm(M);
}

UndirectedGraph sample_once(const UndirectedGraph& G, Rng& rng) {
    const int n = G.n;
    const int m = static_cast<int>(G.edges.size());

    std::vector<long long> deg(n, 0);
    for (const Edge& e : G.edges) {
        ++deg[e.tail];
        if (e.tail != e.head) ++deg[e.head];
    }
    std::vector<char> low(n, 0);
    for (int v = 0; v < n; ++v) low[v] = 2ll * n * deg[v] <= m;

    std::vector<char> keep(m, 0), doubled(m, 0);
    UndirectedGraph rest;
    rest.n = n;
    std::vector<int> rest_to_global;
    for (int e = 0; e < m; ++e) {
        if (low[G.edges[e].tail] || low[G.edges[e].head]) {
            keep[e] = 1;
        } else {
            rest.edges.push_back(G.edges[e]);
            rest_to_global.push_back(e);
        }
    }

    const CycleDecomposition dec = cycle_decomp(rest);
    for (int ri : dec.leftover) keep[rest_to_global[ri]] = 1;
    for (const auto& cyc : dec.cycles) {
        if (cyc.size() % 2 != 0) {
            throw BipartitionViolation("odd cycle in a graph declared bipartite");
        }
        const size_t parity = rng.coin() ? 0 : 1;
        for (size_t j = parity; j < cyc.size(); j += 2) {
            const int e = rest_to_global[cyc[j]];
            keep[e] = 1;
            doubled[e] = 1;
        }
    }

    UndirectedGraph H;
    H.n = n;
    H.name = G.name;
    H.side = G.side;
    H.left_count = G.left_count;
    for (int e = 0; e < m; ++e) {
        if (!keep[e]) continue;
        Edge out = G.edges[e];
        if (doubled[e]) out.w = out.w.mul_pow2(1);
        H.edges.push_back(out);
    }
    return H;
}

}  // namespace

UndirectedGraph sparsify_cycle_unweighted(double delta, const UndirectedGraph& G,
                                          Rng& rng, const SparsifyOptions& opts) {
    if (!(delta > 0.0)) throw std::invalid_argument("sparsify_cycle_unweighted: delta <= 0");
    for (const Edge& e : G.edges) {
        if (!(e.w == Dyadic::one())) {
            throw std::invalid_argument("sparsify_cycle_unweighted: weights must all equal 1");
        }
    }
    const int n = G.n;
    const int m = static_cast<int>(G.edges.size());
    if (n == 0 || m == 0) return G;

    const double threshold =
        std::sqrt(opts.c * n * std::log(std::max(n, 2)) / static_cast<double>(m));
    if (delta < threshold) return G;

    const bool can_verify = opts.verify && n <= oracle_cap();
    for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
        Rng r = rng.child(attempt);
        UndirectedGraph H = sample_once(G, r);
        if (!can_verify || diag_measure(H, G) <= delta) return H;
    }
    throw SparsifyFailure("sampling kept failing its spectral check");
}

UndirectedGraph sparsify_cycle(double eps, int b, const UndirectedGraph& G,
                               double phi, Rng& rng, const SparsifyOptions& opts) {
    if (!(eps > 0.0)) throw std::invalid_argument("sparsify_cycle: eps <= 0");
    if (b < 0) throw std::invalid_argument("sparsify_cycle: b < 0");
    if (!(phi > 0.0 && phi < 1.0)) throw std::invalid_argument("sparsify_cycle: phi out of range");

    std::vector<std::vector<int>> bucket(b + 1);
    for (int e = 0; e < static_cast<int>(G.edges.size()); ++e) {
        const Dyadic& w = G.edges[e].w;
        const int i = -w.scale();
        if (!w.is_pow2() || !w.is_integer() || i > b) {
            throw std::invalid_argument(
                "sparsify_cycle: weights must be integer powers of two up to 2^b");
        }
        bucket[i].push_back(e);
    }

    const double delta = eps * phi * phi;
    UndirectedGraph H;
    H.n = G.n;
    H.name = G.name;
    H.side = G.side;
    H.left_count = G.left_count;

    for (int i = 0; i <= b; ++i) {
        if (bucket[i].empty()) continue;
        UndirectedGraph B;
        B.n = G.n;
        for (int e : bucket[i]) {
            B.edges.push_back({G.edges[e].tail, G.edges[e].head, Dyadic::one()});
        }
        const ExpanderPartition part = expander_partition(B, phi);

        for (int be : part.crossing) H.edges.push_back(G.edges[bucket[i][be]]);

        std::vector<int> part_of(G.n, -1);
        for (size_t p = 0; p < part.parts.size(); ++p) {
            for (int v : part.parts[p]) part_of[v] = static_cast<int>(p);
        }
        Rng bucket_rng = rng.child(static_cast<uint64_t>(i));
        for (size_t p = 0; p < part.parts.size(); ++p) {
            const std::vector<int>& vs = part.parts[p];
            if (vs.size() < 2) continue;
            std::vector<int> local(G.n, -1);
            for (size_t j = 0; j < vs.size(); ++j) local[vs[j]] = static_cast<int>(j);
            UndirectedGraph L;
            L.n = static_cast<int>(vs.size());
            for (int be = 0; be < static_cast<int>(B.edges.size()); ++be) {
                const Edge& e = B.edges[be];
                if (part_of[e.tail] == static_cast<int>(p) &&
                    part_of[e.head] == static_cast<int>(p)) {
                    L.edges.push_back({local[e.tail], local[e.head], Dyadic::one()});
                }
            }
            if (L.edges.empty()) continue;
            Rng part_rng = bucket_rng.child(p);
            const UndirectedGraph S = sparsify_cycle_unweighted(delta, L, part_rng, opts);
            for (const Edge& e : S.edges) {
                H.edges.push_back({vs[e.tail], vs[e.head], e.w.mul_pow2(i)});
            }
        }
    }
    return H;
}

UndirectedGraph sparsify_graph(double eps, const UndirectedGraph& G, Rng& rng,
                               const SparsifyOptions& opts) {
    if (!(eps > 0.0)) throw std::invalid_argument("sparsify_graph: eps <= 0");
    for (const Edge& e : G.edges) {
        if (!e.w.is_integer() || e.w.is_zero()) {
            throw std::invalid_argument("sparsify_graph: weights must be positive integers");
        }
    }
    UndirectedGraph cur = coalesce(G);
    if (cur.n < 2 || cur.edges.empty()) return cur;

    const int t_rounds = opts.max_rounds > 0
                             ? opts.max_rounds
                             : static_cast<int>(std::ceil(std::log2(std::max(cur.n, 2))));
    const double eps_round = eps / (2.0 * t_rounds);

    for (int round = 0; round < t_rounds; ++round) {
        int b = 0;
        for (const Edge& e : cur.edges) b = std::max(b, -e.w.scale());

        UndirectedGraph expanded;
        expanded.n = cur.n;
        expanded.name = cur.name;
        expanded.side = cur.side;
        expanded.left_count = cur.left_count;
        for (const Edge& e : cur.edges) {
            const u128 w = e.w.to_integer();
            for (int i = 0; i <= b; ++i) {
                if ((w >> i) & 1) {
                    expanded.edges.push_back({e.tail, e.head, Dyadic::one().mul_pow2(i)});
                }
            }
        }

        Rng round_rng = rng.child(static_cast<uint64_t>(round));
        const UndirectedGraph H =
            coalesce(sparsify_cycle(eps_round, b, expanded, opts.phi, round_rng, opts));
        if (H.edges.size() >= cur.edges.size()) break;
        cur = H;
        cur.name = G.name;
    }
    return cur;
}

WeightedDigraph sv_sparsify_digraph(double eps, const WeightedDigraph& G,
                                    uint64_t seed, const SparsifyOptions& opts) {
    if (G.edges.empty()) return G;
    const int t = common_scale(G);
    WeightedDigraph scaled = G;
    for (Edge& e : scaled.edges) e.w = e.w.mul_pow2(t);

    const UndirectedGraph lift = bipartite_lift(scaled);
    Rng rng(seed);
    const UndirectedGraph slim = sparsify_graph(eps, lift, rng, opts);
    WeightedDigraph H = extract_directed(slim);
    for (Edge& e : H.edges) e.w = e.w.mul_pow2(-t);
    H.name = G.name;
    return H;
}

}  // namespace svsparse
