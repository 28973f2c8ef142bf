#include "svsparse/graph.hpp"

#include <algorithm>
#include <deque>

#include "svsparse/errors.hpp"

namespace svsparse {

std::pair<std::vector<Dyadic>, std::vector<Dyadic>> degrees(const WeightedDigraph& G) {
    std::vector<Dyadic> din(G.n), dout(G.n);
    for (const Edge& e : G.edges) {
        dout[e.tail] = dout[e.tail] + e.w;
        din[e.head] = din[e.head] + e.w;
    }
    return {din, dout};
}

std::vector<Dyadic> undirected_degrees(const UndirectedGraph& G) {
    std::vector<Dyadic> d(G.n);
    for (const Edge& e : G.edges) {
        d[e.tail] = d[e.tail] + e.w;
        if (e.head != e.tail) d[e.head] = d[e.head] + e.w;
    }
    return d;
}

EulerianCheck validate_eulerian(const WeightedDigraph& G) {
    auto [din, dout] = degrees(G);
    for (int v = 0; v < G.n; ++v) {
        if (din[v] != dout[v]) {
            EulerianCheck c;
            c.violation = EulerianViolation{v, din[v], dout[v]};
            return c;
        }
    }
    EulerianCheck c;
    c.view = EulerianView{&G, std::move(din)};
    return c;
}

UndirectedGraph bipartite_lift(const WeightedDigraph& G) {
    UndirectedGraph H;
    H.n = 2 * G.n;
    H.name = G.name;
    H.left_count = G.n;
    H.side.assign(H.n, 0);
    for (int v = G.n; v < H.n; ++v) H.side[v] = 1;
    H.edges.reserve(G.edges.size());
    for (const Edge& e : G.edges) {
        H.edges.push_back(Edge{e.tail, G.n + e.head, e.w});
    }
    return H;
}

WeightedDigraph extract_directed(const UndirectedGraph& H) {
    if (H.left_count < 0) throw BipartitionViolation("no left/right layout declared");
    int nl = H.left_count;
    int nr = H.n - nl;
    if (nl != nr) throw BipartitionViolation("left/right blocks differ in size");
    WeightedDigraph G;
    G.n = nl;
    G.name = H.name;
    G.edges.reserve(H.edges.size());
    for (const Edge& e : H.edges) {
        bool tl = e.tail < nl, hl = e.head < nl;
        if (tl == hl) {
            if (!e.w.is_zero())
                throw BipartitionViolation("edge inside one side of the bipartition");
            continue;
        }
        int left = tl ? e.tail : e.head;
        int right = tl ? e.head : e.tail;
        G.edges.push_back(Edge{left, right - nl, e.w});
    }
    return G;
}

WeightedDigraph symmetrize(const UndirectedGraph& H) {
    WeightedDigraph G;
    G.n = H.n;
    for (const Edge& e : H.edges) {
        G.edges.push_back(Edge{e.tail, e.head, e.w});
        if (e.head != e.tail) G.edges.push_back(Edge{e.head, e.tail, e.w});
    }
    return G;
}

namespace {
template <typename G>
int common_scale_impl(const G& g, int floor_scale) {
    int t = floor_scale;
    for (const Edge& e : g.edges) t = std::max(t, e.w.scale());
    return t;
}

std::vector<Edge> coalesce_edges(std::vector<Edge> es) {
    std::sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) {
        return std::pair(a.tail, a.head) < std::pair(b.tail, b.head);
    });
    std::vector<Edge> out;
    for (const Edge& e : es) {
        if (e.w.is_zero()) continue;
        if (!out.empty() && out.back().tail == e.tail && out.back().head == e.head)
            out.back().w = out.back().w + e.w;
        else
            out.push_back(e);
    }
    return out;
}
}  // namespace

int common_scale(const WeightedDigraph& G, int floor_scale) {
    return common_scale_impl(G, floor_scale);
}
int common_scale(const UndirectedGraph& G, int floor_scale) {
    return common_scale_impl(G, floor_scale);
}

WeightedDigraph coalesce(const WeightedDigraph& G) {
    WeightedDigraph out;
    out.n = G.n;
    out.name = G.name;
    out.edges = coalesce_edges(G.edges);
    return out;
}

UndirectedGraph coalesce(const UndirectedGraph& G) {
    UndirectedGraph out;
    out.n = G.n;
    out.side = G.side;
    out.left_count = G.left_count;
    out.name = G.name;
    std::vector<Edge> es = G.edges;
    for (Edge& e : es) {
        if (e.tail > e.head) std::swap(e.tail, e.head);
    }
    out.edges = coalesce_edges(std::move(es));
    return out;
}

Dyadic total_weight(const WeightedDigraph& G) {
    Dyadic t;
    for (const Edge& e : G.edges) t = t + e.w;
    return t;
}

Dyadic total_weight(const UndirectedGraph& G) {
    Dyadic t;
    for (const Edge& e : G.edges) t = t + e.w;
    return t;
}

void check_sides(const UndirectedGraph& G) {
    if (!G.has_sides()) return;
    for (const Edge& e : G.edges) {
        if (!e.w.is_zero() && G.side[e.tail] == G.side[e.head])
            throw BipartitionViolation("edge inside one side of the bipartition");
    }
}

std::optional<std::vector<int8_t>> bipartition(const UndirectedGraph& G) {
    if (G.has_sides()) {
        for (const Edge& e : G.edges) {
            if (!e.w.is_zero() && G.side[e.tail] == G.side[e.head]) return std::nullopt;
        }
        return G.side;
    }
    std::vector<std::vector<int>> adj(G.n);
    for (const Edge& e : G.edges) {
        if (e.tail == e.head) {
            if (!e.w.is_zero()) return std::nullopt;  // odd cycle of length 1
            continue;
        }
        adj[e.tail].push_back(e.head);
        adj[e.head].push_back(e.tail);
    }
    std::vector<int8_t> side(G.n, -1);
    std::deque<int> q;
    for (int s = 0; s < G.n; ++s) {
        if (side[s] != -1) continue;
        side[s] = 0;
        q.push_back(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int u : adj[v]) {
                if (side[u] == -1) {
                    side[u] = static_cast<int8_t>(1 - side[v]);
                    q.push_back(u);
                } else if (side[u] == side[v]) {
                    return std::nullopt;
                }
            }
        }
    }
    return side;
}

}  // namespace svsparse
