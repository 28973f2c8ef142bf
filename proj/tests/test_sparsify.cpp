#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>

#include "svsparse/dense.hpp"
#include "svsparse/errors.hpp"
#include "svsparse/expander.hpp"
#include "svsparse/gen.hpp"
#include "svsparse/graph.hpp"
#include "svsparse/graph_io.hpp"
#include "svsparse/sparsify.hpp"

using namespace svsparse;

namespace {

UndirectedGraph complete_bipartite(int k) {
    UndirectedGraph G;
    G.n = 2 * k;
    G.left_count = k;
    G.side.assign(2 * k, 0);
    for (int v = k; v < 2 * k; ++v) G.side[v] = 1;
    for (int a = 0; a < k; ++a)
        for (int b = k; b < 2 * k; ++b) G.edges.push_back({a, b, Dyadic::one()});
    return G;
}

UndirectedGraph two_cliques(int k) {
    UndirectedGraph G;
    G.n = 2 * k;
    for (int block = 0; block < 2; ++block)
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                G.edges.push_back({block * k + a, block * k + b, Dyadic::one()});
    return G;
}

bool degrees_equal(const UndirectedGraph& H, const UndirectedGraph& G) {
    const auto dh = undirected_degrees(H);
    const auto dg = undirected_degrees(G);
    for (int v = 0; v < G.n; ++v)
        if (!(dh[v] == dg[v])) return false;
    return true;
}

double normalized_gap(const UndirectedGraph& H, const UndirectedGraph& G) {
    return spectral_norm(normalized_adjacency(H) - normalized_adjacency(G));
}

}  // namespace

TEST_CASE("second eigenvalue closed forms") {
    CHECK(second_eigenvalue_normalized(complete_bipartite(4)) ==
          doctest::Approx(0.0).epsilon(1e-9));
    // Disconnected graphs keep a second unit eigenvalue.
    CHECK(second_eigenvalue_normalized(two_cliques(4)) ==
          doctest::Approx(1.0).epsilon(1e-9));
    UndirectedGraph edge;
    edge.n = 2;
    edge.edges = {{0, 1, Dyadic::one()}};
    CHECK(second_eigenvalue_normalized(edge) == doctest::Approx(-1.0).epsilon(1e-9));
    UndirectedGraph single;
    single.n = 1;
    CHECK(second_eigenvalue_normalized(single) == -1.0);
}

TEST_CASE("expander partition keeps good graphs whole and splits unions") {
    const ExpanderPartition whole = expander_partition(complete_bipartite(4), 0.2);
    CHECK(whole.parts.size() == 1);
    CHECK(whole.crossing.empty());
    CHECK(whole.crossing_fraction == 0.0);

    const UndirectedGraph U = two_cliques(4);
    const ExpanderPartition split = expander_partition(U, 0.2);
    CHECK(split.parts.size() == 2);
    CHECK(split.crossing.empty());
    for (const auto& part : split.parts) {
        CHECK(part.size() == 4);
        CHECK(second_eigenvalue_normalized(U, part) <= 1.0 - 0.2 + 1e-9);
    }
}

TEST_CASE("expander partition certifies every part and accounts every edge") {
    UndirectedGraph P;  // path on 10 vertices, a poor expander
    P.n = 10;
    for (int v = 0; v + 1 < P.n; ++v) P.edges.push_back({v, v + 1, Dyadic::one()});
    const double phi = 0.3;
    const ExpanderPartition part = expander_partition(P, phi);
    size_t covered = 0;
    std::vector<int> owner(P.n, -1);
    for (size_t p = 0; p < part.parts.size(); ++p) {
        covered += part.parts[p].size();
        for (int v : part.parts[p]) owner[v] = static_cast<int>(p);
        CHECK(second_eigenvalue_normalized(P, part.parts[p]) <= 1.0 - phi + 1e-9);
    }
    CHECK(covered == static_cast<size_t>(P.n));
    for (int e : part.crossing) {
        CHECK(owner[P.edges[e].tail] != owner[P.edges[e].head]);
    }
    CHECK(part.crossing_fraction ==
          doctest::Approx(static_cast<double>(part.crossing.size()) / P.edges.size()));
}

TEST_CASE("unweighted stage validates its input") {
    UndirectedGraph G = complete_bipartite(2);
    Rng rng(1);
    CHECK_THROWS_AS(sparsify_cycle_unweighted(0.0, G, rng), std::invalid_argument);
    G.edges[0].w = Dyadic::from_int(2);
    CHECK_THROWS_AS(sparsify_cycle_unweighted(0.5, G, rng), std::invalid_argument);
}

TEST_CASE("unweighted stage below threshold returns its input") {
    const UndirectedGraph G = complete_bipartite(3);  // 9 edges, far below any bound
    Rng rng(2);
    SparsifyOptions opts;  // default c = 16 needs delta >= sqrt(16*6*ln 6/9) ~ 3.4
    const UndirectedGraph H = sparsify_cycle_unweighted(0.5, G, rng, opts);
    CHECK(H.edges.size() == G.edges.size());
    CHECK(degrees_equal(H, G));
}

TEST_CASE("unweighted stage keeps half of a regular bipartite graph") {
    const WeightedDigraph D = gen_regular_random(8, 16, 5);
    const UndirectedGraph G = coalesce(bipartite_lift(D));
    // Multiplicities fold into weights; rebuild as a unit-weight multigraph.
    UndirectedGraph M;
    M.n = G.n;
    M.side = G.side;
    M.left_count = G.left_count;
    for (const Edge& e : G.edges) {
        const u128 copies = e.w.to_integer();
        for (u128 c = 0; c < copies; ++c) M.edges.push_back({e.tail, e.head, Dyadic::one()});
    }
    REQUIRE(M.edges.size() == 128);

    SparsifyOptions opts;
    opts.c = 0.5;  // threshold sqrt(0.5*16*ln 16/128) ~ 0.416
    Rng rng(9);
    const UndirectedGraph H = sparsify_cycle_unweighted(0.45, M, rng, opts);
    // Every vertex has even degree 16, so the cycle decomposition covers all
    // edges and alternation keeps exactly half of them at weight 2.
    CHECK(H.edges.size() == 64);
    for (const Edge& e : H.edges) CHECK(e.w == Dyadic::from_int(2));
    CHECK(degrees_equal(H, M));
    CHECK(normalized_gap(H, M) <= 0.45 + 1e-9);
}

TEST_CASE("unweighted stage reports unsatisfiable targets") {
    UndirectedGraph C4;
    C4.n = 4;
    C4.edges = {{0, 1, Dyadic::one()}, {1, 2, Dyadic::one()},
                {2, 3, Dyadic::one()}, {3, 0, Dyadic::one()}};
    SparsifyOptions opts;
    opts.c = 0.1;  // threshold ~ 0.372, so delta = 0.4 forces sampling
    // Any alternate-halving of a 4-cycle moves normalized weight 1, so the
    // 0.4 certificate can never be met and every retry fails.
    Rng rng(3);
    CHECK_THROWS_AS(sparsify_cycle_unweighted(0.4, C4, rng, opts), SparsifyFailure);
}

TEST_CASE("unweighted stage rejects odd cycles it must alternate") {
    UndirectedGraph T;
    T.n = 3;
    T.edges = {{0, 1, Dyadic::one()}, {1, 2, Dyadic::one()}, {0, 2, Dyadic::one()}};
    SparsifyOptions opts;
    opts.c = 0.1;
    Rng rng(4);
    CHECK_THROWS_AS(sparsify_cycle_unweighted(0.9, T, rng, opts), BipartitionViolation);
}

TEST_CASE("bucketed stage validates weights and parameters") {
    UndirectedGraph G = complete_bipartite(2);
    Rng rng(1);
    CHECK_THROWS_AS(sparsify_cycle(0.0, 1, G, 0.05, rng), std::invalid_argument);
    CHECK_THROWS_AS(sparsify_cycle(0.5, -1, G, 0.05, rng), std::invalid_argument);
    CHECK_THROWS_AS(sparsify_cycle(0.5, 1, G, 1.5, rng), std::invalid_argument);
    G.edges[0].w = Dyadic::from_int(3);
    CHECK_THROWS_AS(sparsify_cycle(0.5, 2, G, 0.05, rng), std::invalid_argument);
    G.edges[0].w = Dyadic::from_int(4);
    CHECK_THROWS_AS(sparsify_cycle(0.5, 1, G, 0.05, rng), std::invalid_argument);  // 4 > 2^1
}

TEST_CASE("bucketed stage samples a complete bipartite bucket") {
    const UndirectedGraph G = complete_bipartite(24);  // lambda_2 = 0: one part
    SparsifyOptions opts;
    opts.c = 0.4;  // threshold sqrt(0.4*48*ln 48/576) ~ 0.359
    Rng rng(11);
    // delta = eps * phi^2 = 0.95 * 0.64 ~ 0.608 >= threshold: sampling runs,
    // and typical alternate-halving gaps near 0.5 clear the certificate.
    const UndirectedGraph H = sparsify_cycle(0.95, 0, G, 0.8, rng, opts);
    CHECK(H.edges.size() == 288);
    for (const Edge& e : H.edges) CHECK(e.w == Dyadic::from_int(2));
    CHECK(degrees_equal(H, G));
    CHECK(normalized_gap(H, G) <= 0.61);
}

TEST_CASE("bucketed stage keeps weights inside the declared range") {
    UndirectedGraph G;
    G.n = 6;
    for (int v = 0; v < 6; ++v)
        G.edges.push_back({v, (v + 1) % 6, Dyadic::from_int(v % 2 ? 2 : 1)});
    G.edges.push_back({0, 3, Dyadic::from_int(4)});
    Rng rng(8);
    const UndirectedGraph H = sparsify_cycle(0.3, 2, G, 0.05, rng);
    CHECK(degrees_equal(H, G));
    for (const Edge& e : H.edges) {
        CHECK(e.w.is_integer());
        CHECK(Dyadic::one() <= e.w);
        CHECK(e.w <= Dyadic::from_int(8));  // 2^(b+1)
    }
}

TEST_CASE("round driver preserves degrees and the declared bipartition") {
    const UndirectedGraph G = complete_bipartite(8);
    Rng rng(13);
    SparsifyOptions opts;
    opts.phi = 0.3;
    const UndirectedGraph H = sparsify_graph(0.8, G, rng, opts);
    CHECK(H.n == G.n);
    CHECK(H.left_count == G.left_count);
    CHECK(H.side == G.side);
    CHECK(degrees_equal(H, G));
    CHECK_NOTHROW(check_sides(H));
    CHECK(normalized_gap(H, G) <= 0.8 + 1e-9);
}

TEST_CASE("digraph wrapper preserves directed degrees exactly") {
    const WeightedDigraph G = gen_eulerian_random(20, 4, 31);
    const WeightedDigraph H = sv_sparsify_digraph(0.5, G, 77);
    CHECK(H.n == G.n);
    const auto [gin, gout] = degrees(G);
    const auto [hin, hout] = degrees(H);
    for (int v = 0; v < G.n; ++v) {
        CHECK(hin[v] == gin[v]);
        CHECK(hout[v] == gout[v]);
    }
    const ApproxReport rep = measure_sv_eps(H, G);
    CHECK(rep.kernel_ok);
    CHECK(rep.epsilon <= 0.5 + 1e-9);
}

TEST_CASE("digraph wrapper handles fractional weights by rescaling") {
    const WeightedDigraph G = gen_lazy_cycle(12, Dyadic(1, 3));
    const WeightedDigraph H = sv_sparsify_digraph(0.4, G, 5);
    const auto [gin, gout] = degrees(G);
    const auto [hin, hout] = degrees(H);
    for (int v = 0; v < G.n; ++v) {
        CHECK(hin[v] == gin[v]);
        CHECK(hout[v] == gout[v]);
    }
    const ApproxReport rep = measure_sv_eps(H, G);
    CHECK(rep.kernel_ok);
    CHECK(rep.epsilon <= 0.4 + 1e-9);
}

TEST_CASE("sparsification is deterministic in the seed") {
    const WeightedDigraph G = gen_eulerian_random(16, 4, 2);
    const WeightedDigraph H1 = sv_sparsify_digraph(0.5, G, 42);
    const WeightedDigraph H2 = sv_sparsify_digraph(0.5, G, 42);
    CHECK(write_graph(H1) == write_graph(H2));

    Rng a(21), b(21);
    const UndirectedGraph L = complete_bipartite(24);
    SparsifyOptions opts;
    opts.c = 0.4;
    const UndirectedGraph S1 = sparsify_cycle(0.95, 0, L, 0.8, a, opts);
    const UndirectedGraph S2 = sparsify_cycle(0.95, 0, L, 0.8, b, opts);
    CHECK(S1.edges == S2.edges);
}
