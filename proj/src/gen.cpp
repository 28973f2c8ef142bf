#include "svsparse/gen.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "svsparse/rng.hpp"

namespace svsparse {

namespace {

std::vector<int> random_permutation(int n, Rng& rng) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    shuffle(p, rng);
    return p;
}

}  // namespace

WeightedDigraph gen_cycle(int n) {
    if (n < 1) throw std::invalid_argument("gen_cycle: n must be >= 1");
    WeightedDigraph G;
    G.n = n;
    G.name = "cycle-" + std::to_string(n);
    for (int v = 0; v < n; ++v) G.edges.push_back({v, (v + 1) % n, Dyadic::one()});
    return G;
}

WeightedDigraph gen_lazy_cycle(int n, const Dyadic& delta) {
    if (n < 1) throw std::invalid_argument("gen_lazy_cycle: n must be >= 1");
    const Dyadic half(1, 1);
    if (!(delta < half)) throw std::invalid_argument("gen_lazy_cycle: delta must be < 1/2");
    const Dyadic loop = half + delta;
    const Dyadic arc = half - delta;
    WeightedDigraph G;
    G.n = n;
    G.name = "lazy-cycle-" + std::to_string(n);
    for (int v = 0; v < n; ++v) {
        G.edges.push_back({v, v, loop});
        if (!arc.is_zero()) G.edges.push_back({v, (v + 1) % n, arc});
    }
    return G;
}

WeightedDigraph gen_complete_loops(int n) {
    if (n < 1) throw std::invalid_argument("gen_complete_loops: n must be >= 1");
    WeightedDigraph G;
    G.n = n;
    G.name = "complete-loops-" + std::to_string(n);
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) G.edges.push_back({u, v, Dyadic::one()});
    }
    return G;
}

WeightedDigraph gen_regular_random(int n, int d, uint64_t seed) {
    if (n < 1 || d < 1) throw std::invalid_argument("gen_regular_random: need n, d >= 1");
    WeightedDigraph G;
    G.n = n;
    G.name = "regular-random-" + std::to_string(n) + "x" + std::to_string(d);
    Rng root(seed);
    for (int layer = 0; layer < d; ++layer) {
        Rng r = root.child(static_cast<uint64_t>(layer));
        const std::vector<int> p = random_permutation(n, r);
        for (int v = 0; v < n; ++v) G.edges.push_back({v, p[v], Dyadic::one()});
    }
    return G;
}

WeightedDigraph gen_eulerian_random(int n, int d, uint64_t seed) {
    if (n < 1 || d < 1) throw std::invalid_argument("gen_eulerian_random: need n, d >= 1");
    WeightedDigraph G;
    G.n = n;
    G.name = "eulerian-random-" + std::to_string(n) + "x" + std::to_string(d);
    Rng root(seed);
    for (int layer = 0; layer < d; ++layer) {
        Rng r = root.child(static_cast<uint64_t>(layer));
        const Dyadic w = Dyadic::from_int(1 + r.bounded(4));
        if (layer == 0) {
            // Hamiltonian cycle layer pins strong connectivity
            const std::vector<int> p = random_permutation(n, r);
            for (int i = 0; i < n; ++i) G.edges.push_back({p[i], p[(i + 1) % n], w});
        } else {
            const std::vector<int> p = random_permutation(n, r);
            for (int v = 0; v < n; ++v) G.edges.push_back({v, p[v], w});
        }
    }
    return G;
}

WeightedDigraph gen_strong_random(int n, int extra, int wmax, uint64_t seed) {
    if (n < 1 || extra < 0 || wmax < 1) {
        throw std::invalid_argument("gen_strong_random: need n >= 1, extra >= 0, wmax >= 1");
    }
    WeightedDigraph G;
    G.n = n;
    G.name = "strong-random-" + std::to_string(n);
    Rng root(seed);
    Rng rc = root.child(0);
    const std::vector<int> p = random_permutation(n, rc);
    for (int i = 0; i < n; ++i) G.edges.push_back({p[i], p[(i + 1) % n], Dyadic::one()});
    Rng re = root.child(1);
    for (int j = 0; j < extra; ++j) {
        const int tail = static_cast<int>(re.bounded(static_cast<uint64_t>(n)));
        const int head = static_cast<int>(re.bounded(static_cast<uint64_t>(n)));
        const Dyadic w = Dyadic::from_int(1 + re.bounded(static_cast<uint64_t>(wmax)));
        G.edges.push_back({tail, head, w});
    }
    return G;
}

}  // namespace svsparse
