#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "svsparse/dense.hpp"
#include "svsparse/errors.hpp"
#include "svsparse/gen.hpp"
#include "svsparse/graph.hpp"
#include "svsparse/walks.hpp"

using namespace svsparse;

namespace {

bool directed_degrees_equal(const WeightedDigraph& H, const WeightedDigraph& G) {
    const auto [hin, hout] = degrees(H);
    const auto [gin, gout] = degrees(G);
    for (int v = 0; v < G.n; ++v)
        if (!(hin[v] == gin[v] && hout[v] == gout[v])) return false;
    return true;
}

// Dense ell-step mass matrix at stationarity: W^ell * diag(pi).
Md mass_reference(const WeightedDigraph& G, const StationaryInfo& st, long ell) {
    Md P = Md::Zero(G.n, G.n);
    P.diagonal() = st.pi;
    return matrix_power(walk_matrix(G), ell) * P;
}

}  // namespace

TEST_CASE("stationary distribution of a cycle is uniform") {
    const WeightedDigraph G = gen_cycle(6);
    const StationaryInfo st = stationary(G);
    REQUIRE(st.pi.size() == 6);
    for (int v = 0; v < 6; ++v) CHECK(st.pi(v) == doctest::Approx(1.0 / 6).epsilon(1e-12));
    CHECK(st.pi_min == doctest::Approx(1.0 / 6).epsilon(1e-12));
    CHECK(st.residual <= 1e-10);
}

TEST_CASE("stationary distribution of an eulerian graph is degree proportional") {
    const WeightedDigraph G = gen_eulerian_random(12, 3, 19);
    const StationaryInfo st = stationary(G);
    const auto [din, dout] = degree_vectors(G);
    const double total = dout.sum();
    for (int v = 0; v < G.n; ++v)
        CHECK(st.pi(v) == doctest::Approx(dout(v) / total).epsilon(1e-9));
}

TEST_CASE("stationary distribution of a two-state chain solves by hand") {
    // 0 -> 1 with mass 1/4 of its out-weight, 1 -> 0 with 1/2: pi = (2/3, 1/3).
    WeightedDigraph G;
    G.n = 2;
    G.edges = {{0, 0, Dyadic(3, 2)}, {0, 1, Dyadic(1, 2)},
               {1, 1, Dyadic(1, 1)}, {1, 0, Dyadic(1, 1)}};
    const StationaryInfo st = stationary(G);
    CHECK(st.pi(0) == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(st.pi(1) == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("stationary distribution handles the single-vertex graph") {
    WeightedDigraph G;
    G.n = 1;
    G.edges = {{0, 0, Dyadic::one()}};
    const StationaryInfo st = stationary(G);
    CHECK(st.pi(0) == 1.0);
}

TEST_CASE("stationary distribution requires strong connectivity") {
    WeightedDigraph G;
    G.n = 2;
    G.edges = {{0, 1, Dyadic::one()}, {1, 1, Dyadic::one()}};
    CHECK_THROWS_AS(stationary(G), NotDefined);
    WeightedDigraph empty;
    empty.n = 0;
    CHECK_THROWS_AS(stationary(empty), std::invalid_argument);
}

TEST_CASE("cut masses split the stationary step in half") {
    const WeightedDigraph G = gen_strong_random(10, 14, 3, 5);
    const std::vector<int> S = {0, 2, 4, 6};
    const std::vector<int> T = {1, 2, 3};
    const CutQuery q = cut_value(G, S, T);
    // Flow conservation at stationarity: mass leaving S equals mass entering
    // S, so cut + uncut is exactly half of the unit total.
    CHECK(q.cut_S + q.uncut_S == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(q.cut_T + q.uncut_T == doctest::Approx(0.5).epsilon(1e-10));

    const StationaryInfo st = stationary(G);
    const Md M = mass_reference(G, st, 1);
    const CutQuery raw = cut_mass(M, S, T);
    CHECK(q.value == doctest::Approx(raw.value).epsilon(1e-10));
    CHECK(q.cut_S == doctest::Approx(raw.cut_S).epsilon(1e-10));
    CHECK(q.uncut_T == doctest::Approx(raw.uncut_T).epsilon(1e-10));
}

TEST_CASE("uncut mass is complement symmetric") {
    const WeightedDigraph G = gen_eulerian_random(9, 3, 23);
    const std::vector<int> S = {0, 3, 7};
    std::vector<int> Sc;
    for (int v = 0; v < G.n; ++v)
        if (v != 0 && v != 3 && v != 7) Sc.push_back(v);
    const CutQuery a = cut_value(G, S, S);
    const CutQuery b = cut_value(G, Sc, Sc);
    CHECK(a.uncut_S == doctest::Approx(b.uncut_S).epsilon(1e-10));
    CHECK(a.cut_S == doctest::Approx(b.cut_S).epsilon(1e-10));
}

TEST_CASE("doubly stochastic cut masses use the uniform measure") {
    const WeightedDigraph G = gen_lazy_cycle(8, Dyadic(1, 2));
    const Md W = walk_matrix(G);
    const std::vector<int> S = {0, 1, 2, 3};
    const CutQuery q = cut_value_doubly_stochastic(W, S, S);
    // Exactly the two boundary arcs carry (1/2 - 1/4)/8 of mass each way.
    CHECK(q.cut_S == doctest::Approx(0.25 / 8.0).epsilon(1e-12));
    CHECK(q.cut_S + q.uncut_S == doctest::Approx(0.5).epsilon(1e-12));
    const CutQuery direct = cut_value(G, S, S);
    CHECK(direct.cut_S == doctest::Approx(q.cut_S).epsilon(1e-10));
}

TEST_CASE("eulerian rescaling lands near the stationary measure") {
    const WeightedDigraph G = gen_strong_random(8, 12, 3, 9);
    const StationaryInfo st = stationary(G);
    const int t0 = 20;
    const WeightedDigraph H = eulerian_scale(G, st, t0);
    const EulerianCheck chk = validate_eulerian(H);
    REQUIRE(chk.ok());
    // Degrees stay within the rounding slack of pi.
    for (int v = 0; v < G.n; ++v) {
        const double d = chk.view->degree[v].to_double();
        CHECK(std::abs(d - st.pi(v)) <= 3.0 * G.n * std::pow(2.0, -t0));
    }
    // The scaled adjacency tracks the ideal mass matrix entrywise.
    const Md ideal = mass_reference(G, st, 1);
    CHECK(spectral_norm(adjacency(H) - ideal) <= 2.0 * G.n * std::pow(2.0, -t0));
}

TEST_CASE("lazify mixes toward the identity") {
    Md N(2, 2);
    N << 0, 1, 1, 0;
    const Md L = lazify(N, 0.25);
    CHECK(L(0, 0) == doctest::Approx(0.25));
    CHECK(L(1, 0) == doctest::Approx(0.75));

    const WeightedDigraph G = gen_eulerian_random(8, 3, 29);
    const WeightedDigraph H = lazify_graph(G, Dyadic(1, 2));
    CHECK(directed_degrees_equal(H, G));
    const auto [din, dout] = degree_vectors(G);
    const Md A = adjacency(H);
    const Md expect = 0.75 * adjacency(G) + 0.25 * Vd(din).asDiagonal().toDenseMatrix();
    CHECK(spectral_norm(A - expect) <= 1e-12);
}

TEST_CASE("lazify validates its arguments") {
    const WeightedDigraph G = gen_eulerian_random(6, 2, 1);
    CHECK_THROWS_AS(lazify_graph(G, Dyadic::one()), std::invalid_argument);
    WeightedDigraph bad = G;
    bad.edges.push_back({0, 1, Dyadic::one()});
    CHECK_THROWS_AS(lazify_graph(bad, Dyadic(1, 2)), DegreeMismatch);
    const WeightedDigraph same = lazify_graph(G, Dyadic::zero());
    CHECK(same == coalesce(G));
}

TEST_CASE("scaled powering produces a certified plan") {
    const WeightedDigraph G = gen_strong_random(8, 12, 2, 13);
    const double eps = 0.3, delta = 0.05;
    const long ell = 3;
    const double s_lower = 0.5 * stationary(G).pi_min;
    const ScaledPowerResult R = sparsify_scaled_power(eps, delta, ell, G, s_lower, 71);
    CHECK(R.t0 >= 1);
    CHECK(R.gamma > Dyadic::zero());
    CHECK(R.tau >= 1.0);
    REQUIRE(validate_eulerian(R.graph).ok());
    CHECK(directed_degrees_equal(R.graph, R.lazified));

    // The sparsified power tracks the dense lazified power in the
    // degree-normalized measure.
    const Md target = matrix_power(normalized_adjacency(R.lazified), ell);
    const ApproxReport rep = measure_svn_eps(normalized_adjacency(R.graph), target);
    CHECK(rep.kernel_ok);
    CHECK(rep.epsilon <= eps + 1e-9);

    // Lazy loops shift each walk column by at most gamma plus grid slack.
    const Md Wl = walk_matrix(R.lazified);
    const Md Ws = walk_matrix(R.scaled);
    CHECK(spectral_norm(Wl - Ws) <= 2.0 * R.gamma.to_double() + 1e-3);
}

TEST_CASE("scaled powering opens a gap on permutation walks by lazifying") {
    // A pure cycle has second singular value 1; the lazy loops make the
    // pipeline well posed, and tau certifies the lazified gap.
    const WeightedDigraph G = gen_cycle(6);
    const ScaledPowerResult R = sparsify_scaled_power(0.3, 0.05, 2, G, 0.1, 5);
    const double sigma = second_normalized_singular(R.lazified);
    CHECK(sigma < 1.0);
    CHECK(R.tau == doctest::Approx((1.0 + 1e-6) / (1.0 - sigma)).epsilon(1e-9));
}

TEST_CASE("scaled powering validates the stationary floor") {
    const WeightedDigraph G = gen_cycle(6);  // pi_min = 1/6
    CHECK_THROWS_AS(sparsify_scaled_power(0.3, 0.05, 2, G, 0.5, 5),
                    std::invalid_argument);
}

TEST_CASE("cut estimation matches the dense mass power within its budget") {
    const WeightedDigraph G = gen_strong_random(10, 16, 3, 17);
    const double eps = 0.25;
    const long ell = 2;
    const CutEstimator est = estimate_cut(eps, ell, G, 0.5 * stationary(G).pi_min, 99);
    CHECK(est.eps == eps);
    CHECK(est.ell == ell);
    CHECK(est.delta > 0.0);

    const StationaryInfo st = stationary(G);
    const Md M = mass_reference(G, st, ell);
    const std::vector<std::vector<int>> sets = {
        {0, 1, 2}, {3, 4, 5, 6}, {0, 2, 4, 6, 8}, {7, 8, 9}};
    for (const auto& S : sets) {
        for (const auto& T : sets) {
            const CutQuery have = est.query(S, T);
            const CutQuery want = cut_mass(M, S, T);
            const double bound =
                2.0 * eps * std::sqrt(std::min(want.cut_S, want.uncut_S) *
                                      std::min(want.cut_T, want.uncut_T)) +
                4.0 * est.delta * G.n;
            CHECK(std::abs(have.value - want.value) <= bound + 1e-9);
        }
    }
}

TEST_CASE("cut estimator queries are exact sums over its sparse graph") {
    const WeightedDigraph G = gen_strong_random(8, 10, 2, 33);
    const CutEstimator est = estimate_cut(0.3, 2, G, 0.5 * stationary(G).pi_min, 7);
    const std::vector<int> S = {0, 1, 2};
    const CutQuery q = est.query(S, S);
    // Recompute from the held graph by brute force.
    std::vector<char> in(G.n, 0);
    for (int v : S) in[v] = 1;
    Dyadic val;
    for (const Edge& e : est.H.edges)
        if (in[e.tail] && in[e.head]) val = val + e.w;
    CHECK(q.value == doctest::Approx(val.to_double()).epsilon(1e-12));
    CHECK(q.cut_S + q.uncut_S == doctest::Approx(0.5).epsilon(2.0 * est.delta * G.n + 1e-6));
}

TEST_CASE("query rejects out-of-range vertices") {
    const WeightedDigraph G = gen_strong_random(6, 8, 2, 2);
    const CutEstimator est = estimate_cut(0.3, 1, G, 0.5 * stationary(G).pi_min, 3);
    CHECK_THROWS_AS(est.query({0, 6}, {1}), std::out_of_range);
    CHECK_THROWS_AS(cut_value(G, {0}, {-1}), std::out_of_range);
}
