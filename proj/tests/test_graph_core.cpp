#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "svsparse/dyadic.hpp"
#include "svsparse/errors.hpp"
#include "svsparse/graph.hpp"
#include "svsparse/graph_io.hpp"

using namespace svsparse;

namespace {

WeightedDigraph cycle3() {
    WeightedDigraph G;
    G.n = 3;
    G.edges = {{0, 1, Dyadic::one()}, {1, 2, Dyadic::one()}, {2, 0, Dyadic::one()}};
    return G;
}

}  // namespace

TEST_CASE("dyadic canonical form") {
    CHECK(Dyadic(6, 4) == Dyadic(3, 3));
    CHECK(Dyadic(8, 3) == Dyadic::one());
    CHECK(Dyadic(0, 7) == Dyadic::zero());
    CHECK(Dyadic(0, 7).scale() == 0);
    CHECK(Dyadic(12, 0) == Dyadic(3, -2));
    CHECK(Dyadic(3, 3).num() == 3);
    CHECK(Dyadic(3, 3).scale() == 3);
}

TEST_CASE("dyadic predicates") {
    CHECK(Dyadic::zero().is_zero());
    CHECK(Dyadic::from_int(7).is_integer());
    CHECK(Dyadic(3, -1).is_integer());  // 6
    CHECK_FALSE(Dyadic(3, 3).is_integer());
    CHECK(Dyadic(1, 5).is_pow2());
    CHECK(Dyadic(1, -5).is_pow2());
    CHECK_FALSE(Dyadic(3, 3).is_pow2());
}

TEST_CASE("dyadic arithmetic is exact") {
    const Dyadic eighth(1, 3), three_eighths(3, 3);
    CHECK(eighth + three_eighths == Dyadic(1, 1));
    CHECK(Dyadic(5, 3) - eighth == Dyadic(1, 1));
    CHECK(three_eighths * Dyadic(5, 2) == Dyadic(15, 5));
    CHECK(three_eighths.mul_pow2(3) == Dyadic::from_int(3));
    CHECK(three_eighths.mul_pow2(-2) == Dyadic(3, 5));
    CHECK(Dyadic::from_int(6) * Dyadic(1, 1) == Dyadic::from_int(3));
}

TEST_CASE("dyadic subtraction below zero throws") {
    CHECK_THROWS_AS(Dyadic(1, 3) - Dyadic(1, 2), OverflowError);
}

TEST_CASE("dyadic overflow throws instead of wrapping") {
    const Dyadic big(~u128(0), 0);  // 2^128 - 1, odd, fills the numerator
    CHECK_THROWS_AS(big * Dyadic::from_int(3), OverflowError);
    CHECK_THROWS_AS(big + big, OverflowError);
    // Powers of two renormalize into the scale, so they never overflow.
    CHECK(Dyadic(u128(1) << 127, 0) * Dyadic::from_int(2) == Dyadic(1, -128));
}

TEST_CASE("dyadic exact division") {
    auto q = Dyadic(3, 3).div_exact(Dyadic(1, 3));
    REQUIRE(q.has_value());
    CHECK(*q == Dyadic::from_int(3));
    // 1/4 over 3/8 = 2/3 has no dyadic representation.
    CHECK_FALSE(Dyadic(1, 2).div_exact(Dyadic(3, 3)).has_value());
    CHECK_FALSE(Dyadic::one().div_exact(Dyadic::zero()).has_value());
    auto h = Dyadic(15, 5).div_exact(Dyadic(5, 2));
    REQUIRE(h.has_value());
    CHECK(*h == Dyadic(3, 3));
}

TEST_CASE("dyadic grid floor") {
    CHECK(Dyadic(3, 3).floor_to_grid(1) == Dyadic::zero());
    CHECK(Dyadic(3, 3).floor_to_grid(2) == Dyadic(1, 2));
    CHECK(Dyadic(3, 3).floor_to_grid(3) == Dyadic(3, 3));
    CHECK(Dyadic(3, 5).floor_to_grid(3) == Dyadic::zero());
    CHECK(Dyadic(7, 2).floor_to_grid(0) == Dyadic::from_int(1));
    CHECK(Dyadic(7, 2).floor_to_grid(-1) == Dyadic::zero());
}

TEST_CASE("dyadic double round trips") {
    auto d = Dyadic::from_double(0.375);
    REQUIRE(d.has_value());
    CHECK(*d == Dyadic(3, 3));
    CHECK(d->to_double() == 0.375);
    CHECK_FALSE(Dyadic::from_double(-0.5).has_value());
    CHECK_FALSE(Dyadic::from_double(1.0 / 0.0).has_value());
    CHECK_FALSE(Dyadic::from_double(0.0 / 0.0).has_value());
    // 0.1 as a double is an exact dyadic at scale 55; a 3-bit cap rejects it.
    CHECK(Dyadic::from_double(0.1).has_value());
    CHECK_FALSE(Dyadic::from_double(0.1, 3).has_value());
}

TEST_CASE("dyadic ordering and strings") {
    CHECK(Dyadic(1, 2) < Dyadic(3, 3));
    CHECK(Dyadic(3, 3) < Dyadic::one());
    CHECK(Dyadic(3, 3) <= Dyadic(3, 3));
    CHECK(Dyadic::from_int(5).to_string() == "5");
    CHECK(Dyadic(3, 5).to_string() == "3/32");
    CHECK(Dyadic::zero().to_string() == "0");
    CHECK(Dyadic::from_int(6).to_integer() == 6);
    CHECK_THROWS_AS(Dyadic(3, 3).to_integer(), OverflowError);
}

TEST_CASE("degree sums are exact") {
    WeightedDigraph G;
    G.n = 3;
    G.edges = {{0, 1, Dyadic(3, 3)}, {0, 1, Dyadic(1, 3)}, {1, 2, Dyadic(1, 1)},
               {2, 0, Dyadic(1, 2)}, {2, 2, Dyadic(1, 2)}};
    const auto [din, dout] = degrees(G);
    CHECK(din[0] == Dyadic(1, 2));
    CHECK(din[1] == Dyadic(1, 1));
    CHECK(din[2] == Dyadic(3, 2));
    CHECK(dout[0] == Dyadic(1, 1));
    CHECK(dout[1] == Dyadic(1, 1));
    CHECK(dout[2] == Dyadic(1, 1));
    CHECK(total_weight(G) == Dyadic(3, 1));
}

TEST_CASE("eulerian validation reports the first bad vertex") {
    CHECK(validate_eulerian(cycle3()).ok());

    WeightedDigraph G = cycle3();
    G.edges.push_back({0, 1, Dyadic(1, 1)});
    const EulerianCheck chk = validate_eulerian(G);
    REQUIRE_FALSE(chk.ok());
    REQUIRE(chk.violation.has_value());
    CHECK(chk.violation->vertex == 0);
    CHECK(chk.violation->in_degree == Dyadic::one());
    CHECK(chk.violation->out_degree == Dyadic(3, 1));
}

TEST_CASE("eulerian view carries the shared degree vector") {
    WeightedDigraph G = cycle3();
    G.edges.push_back({1, 1, Dyadic(1, 2)});
    const EulerianCheck chk = validate_eulerian(G);
    REQUIRE(chk.ok());
    CHECK(chk.view->degree[0] == Dyadic::one());
    CHECK(chk.view->degree[1] == Dyadic(5, 2));
    CHECK(chk.view->degree[2] == Dyadic::one());
}

TEST_CASE("bipartite lift doubles the vertices and keeps weights") {
    const WeightedDigraph G = cycle3();
    const UndirectedGraph H = bipartite_lift(G);
    CHECK(H.n == 6);
    CHECK(H.left_count == 3);
    REQUIRE(H.has_sides());
    for (int v = 0; v < 3; ++v) CHECK(H.side[v] == 0);
    for (int v = 3; v < 6; ++v) CHECK(H.side[v] == 1);
    REQUIRE(H.edges.size() == 3);
    // Arc t->h becomes {t, n+h}; degree at left-t is dout(t), at right-h din(h).
    const auto deg = undirected_degrees(H);
    for (int v = 0; v < 6; ++v) CHECK(deg[v] == Dyadic::one());
    CHECK_NOTHROW(check_sides(H));
}

TEST_CASE("extract_directed inverts the lift") {
    WeightedDigraph G;
    G.n = 4;
    G.edges = {{0, 1, Dyadic(3, 3)}, {1, 2, Dyadic(1, 1)}, {2, 0, Dyadic::one()},
               {3, 3, Dyadic(5, 2)}};
    const WeightedDigraph back = extract_directed(bipartite_lift(G));
    CHECK(coalesce(back) == coalesce(G));
    CHECK(back.n == 4);
}

TEST_CASE("extract_directed rejects edges inside a side") {
    UndirectedGraph H;
    H.n = 4;
    H.left_count = 2;
    H.side = {0, 0, 1, 1};
    H.edges = {{0, 1, Dyadic::one()}};
    CHECK_THROWS_AS(extract_directed(H), BipartitionViolation);

    UndirectedGraph J;
    J.n = 4;
    J.edges = {{0, 2, Dyadic::one()}};
    CHECK_THROWS_AS(extract_directed(J), BipartitionViolation);  // no layout
}

TEST_CASE("symmetrize emits opposing arcs and single loop arcs") {
    UndirectedGraph H;
    H.n = 3;
    H.edges = {{0, 1, Dyadic(1, 1)}, {2, 2, Dyadic(3, 2)}};
    const WeightedDigraph G = symmetrize(H);
    CHECK(G.n == 3);
    const WeightedDigraph C = coalesce(G);
    REQUIRE(C.edges.size() == 3);
    const auto [din, dout] = degrees(C);
    CHECK(din[0] == Dyadic(1, 1));
    CHECK(din[1] == Dyadic(1, 1));
    CHECK(din[2] == Dyadic(3, 2));
    for (int v = 0; v < 3; ++v) CHECK(din[v] == dout[v]);
}

TEST_CASE("coalesce sums parallels, drops zeros, orders canonically") {
    WeightedDigraph G;
    G.n = 3;
    G.edges = {{2, 0, Dyadic(1, 2)}, {0, 1, Dyadic(1, 3)}, {0, 1, Dyadic(3, 3)},
               {1, 2, Dyadic::zero()}};
    const WeightedDigraph C = coalesce(G);
    REQUIRE(C.edges.size() == 2);
    CHECK(C.edges[0] == Edge{0, 1, Dyadic(1, 1)});
    CHECK(C.edges[1] == Edge{2, 0, Dyadic(1, 2)});
    CHECK(coalesce(C) == C);
}

TEST_CASE("undirected coalesce normalizes endpoint order") {
    UndirectedGraph H;
    H.n = 3;
    H.edges = {{1, 0, Dyadic(1, 2)}, {0, 1, Dyadic(1, 2)}, {2, 1, Dyadic::one()}};
    const UndirectedGraph C = coalesce(H);
    REQUIRE(C.edges.size() == 2);
    CHECK(C.edges[0] == Edge{0, 1, Dyadic(1, 1)});
    CHECK(C.edges[1] == Edge{1, 2, Dyadic::one()});
    CHECK(total_weight(C) == total_weight(H));
}

TEST_CASE("common scale is the coarsest shared grid") {
    WeightedDigraph G;
    G.n = 2;
    G.edges = {{0, 1, Dyadic(3, 3)}, {1, 0, Dyadic(1, 1)}};
    CHECK(common_scale(G) == 3);
    CHECK(common_scale(G, 10) == 10);
    WeightedDigraph I;
    I.n = 2;
    I.edges = {{0, 1, Dyadic::from_int(4)}};
    CHECK(common_scale(I) == 0);
}

TEST_CASE("graph text round trips byte for byte") {
    WeightedDigraph G;
    G.n = 3;
    G.name = "trip";
    G.edges = {{0, 1, Dyadic(3, 5)}, {1, 2, Dyadic::from_int(2)}, {2, 0, Dyadic::one()}};
    const std::string text = write_graph(G);
    CHECK(text == "p 3 3\n0 1 3/32\n1 2 2\n2 0 1\n");
    const WeightedDigraph back = parse_graph(text);
    CHECK(back.n == G.n);
    CHECK(back.edges == G.edges);
    CHECK(write_graph(back) == text);
}

TEST_CASE("parser accepts comments and rejects malformed input") {
    const WeightedDigraph G = parse_graph("# header comment\np 2 1\n# mid\n0 1 5/8\n");
    CHECK(G.n == 2);
    REQUIRE(G.edges.size() == 1);
    CHECK(G.edges[0].w == Dyadic(5, 3));

    CHECK_THROWS_AS(parse_graph("0 1 1\n"), ParseError);            // missing header
    CHECK_THROWS_AS(parse_graph("p 2\n"), ParseError);              // short header
    CHECK_THROWS_AS(parse_graph("p 2 1\n0 2 1\n"), ParseError);     // vertex range
    CHECK_THROWS_AS(parse_graph("p 2 1\n0 1 1/3\n"), ParseError);   // non-pow2 denom
    CHECK_THROWS_AS(parse_graph("p 2 1\n0 1 -1\n"), ParseError);    // negative
    CHECK_THROWS_AS(parse_graph("p 2 1\n0 1 1 9\n"), ParseError);   // trailing token
}

TEST_CASE("bipartition finds two-colorings exactly when they exist") {
    UndirectedGraph even;
    even.n = 4;
    even.edges = {{0, 1, Dyadic::one()}, {1, 2, Dyadic::one()},
                  {2, 3, Dyadic::one()}, {3, 0, Dyadic::one()}};
    auto sides = bipartition(even);
    REQUIRE(sides.has_value());
    for (const Edge& e : even.edges) CHECK((*sides)[e.tail] != (*sides)[e.head]);

    UndirectedGraph odd;
    odd.n = 3;
    odd.edges = {{0, 1, Dyadic::one()}, {1, 2, Dyadic::one()}, {2, 0, Dyadic::one()}};
    CHECK_FALSE(bipartition(odd).has_value());

    UndirectedGraph iso;
    iso.n = 2;
    auto free_sides = bipartition(iso);
    REQUIRE(free_sides.has_value());
    CHECK((*free_sides)[0] == 0);
    CHECK((*free_sides)[1] == 0);
}

TEST_CASE("declared sides are validated") {
    UndirectedGraph H;
    H.n = 2;
    H.side = {0, 0};
    H.edges = {{0, 1, Dyadic::one()}};
    CHECK_THROWS_AS(check_sides(H), BipartitionViolation);
    H.side = {0, 1};
    CHECK_NOTHROW(check_sides(H));
    CHECK(bipartition(H).has_value());
}
