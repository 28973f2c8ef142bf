#include "svsparse/cycles.hpp"

#include <cstddef>

namespace svsparse {

CycleDecomposition cycle_decomp(const UndirectedGraph& G) {
    const int n = G.n;
    const int m = static_cast<int>(G.edges.size());
    CycleDecomposition out;

    // incidence[v] = (edge index, other endpoint); loops appear once
    std::vector<std::vector<std::pair<int, int>>> incidence(n);
    for (int e = 0; e < m; ++e) {
        const int a = G.edges[e].tail, b = G.edges[e].head;
        incidence[a].push_back({e, b});
        if (a != b) incidence[b].push_back({e, a});
    }

    std::vector<size_t> cursor(n, 0);
    std::vector<char> used(m, 0);
    std::vector<int> pos(n, -1);  // index on the current walk path, -1 if off
    std::vector<int> path_vertices;
    std::vector<int> path_edges;

    for (int s = 0; s < n; ++s) {
        if (cursor[s] >= incidence[s].size()) continue;
        pos[s] = 0;
        path_vertices.assign(1, s);
        path_edges.clear();
        while (!path_vertices.empty()) {
            const int v = path_vertices.back();
            auto& inc = incidence[v];
            while (cursor[v] < inc.size() && used[inc[cursor[v]].first]) ++cursor[v];
            if (cursor[v] == inc.size()) {
                // v is exhausted and can never be re-entered; the edge that
                // led here (if any) joins the leftover set
                pos[v] = -1;
                path_vertices.pop_back();
                if (!path_edges.empty()) {
                    out.leftover.push_back(path_edges.back());
                    path_edges.pop_back();
                }
                continue;
            }
            const auto [e, u] = inc[cursor[v]];
            used[e] = 1;
            if (pos[u] >= 0) {
                // closing edge: cut the cycle u -> ... -> v -> u off the path
                const int p = pos[u];
                std::vector<int> cyc(path_edges.begin() + p, path_edges.end());
                cyc.push_back(e);
                out.cycles.push_back(std::move(cyc));
                for (size_t i = p + 1; i < path_vertices.size(); ++i) pos[path_vertices[i]] = -1;
                path_vertices.resize(p + 1);
                path_edges.resize(p);
            } else {
                pos[u] = static_cast<int>(path_vertices.size());
                path_vertices.push_back(u);
                path_edges.push_back(e);
            }
        }
    }
    return out;
}

}  // namespace svsparse
