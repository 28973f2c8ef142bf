#include "svsparse/expander.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "svsparse/dense.hpp"
#include "svsparse/errors.hpp"

namespace svsparse {

namespace {

// Induced dense normalized adjacency plus degrees, in local indexing.
struct Induced {
    Md M;
    Eigen::VectorXd deg;
};

Induced induced_normalized(const UndirectedGraph& G, const std::vector<int>& vs,
                           const std::vector<int>& local) {
    const int k = static_cast<int>(vs.size());
    Induced out;
    out.M = Md::Zero(k, k);
    out.deg = Eigen::VectorXd::Zero(k);
    for (const Edge& e : G.edges) {
        const int a = local[e.tail], b = local[e.head];
        if (a < 0 || b < 0) continue;
        const double w = e.w.to_double();
        out.M(a, b) += w;
        if (a != b) out.M(b, a) += w;
        out.deg(a) += w;
        if (a != b) out.deg(b) += w;
    }
    for (int i = 0; i < k; ++i) {
        const double s = out.deg(i) > 0.0 ? 1.0 / std::sqrt(out.deg(i)) : 0.0;
        out.M.row(i) *= s;
        out.M.col(i) *= s;
    }
    return out;
}

struct Splitter {
    const UndirectedGraph& G;
    double phi;
    int max_depth;
    std::vector<int> local;  // global vertex -> local index, -1 if outside
    std::vector<std::vector<int>> parts;

    void run(std::vector<int> vs, int depth) {
        if (depth > max_depth) {
            throw PartitionFailure("spectral bisection exceeded its depth budget");
        }
        const int k = static_cast<int>(vs.size());
        if (k <= 1) {
            parts.push_back(std::move(vs));
            return;
        }
        for (size_t i = 0; i < vs.size(); ++i) local[vs[i]] = static_cast<int>(i);
        const Induced ind = induced_normalized(G, vs, local);
        Eigen::SelfAdjointEigenSolver<Md> es(ind.M);
        const Eigen::VectorXd ev = es.eigenvalues();  // ascending
        const double lambda2 = ev(k - 2);
        if (lambda2 <= 1.0 - phi + 1e-12) {
            for (int v : vs) local[v] = -1;
            parts.push_back(std::move(vs));
            return;
        }
        // sweep cut along the second eigenvector, entries scaled by D^{-1/2}
        const Eigen::VectorXd u = es.eigenvectors().col(k - 2);
        std::vector<int> order(k);
        std::iota(order.begin(), order.end(), 0);
        std::vector<double> score(k);
        for (int i = 0; i < k; ++i) {
            score[i] = u(i) / std::sqrt(std::max(ind.deg(i), 1e-300));
        }
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return score[a] < score[b]; });

        std::vector<char> in_prefix(k, 0);
        const double total_vol = ind.deg.sum();
        double vol = 0.0, cut = 0.0;
        double best_cond = std::numeric_limits<double>::infinity();
        int best_j = 0;
        for (int j = 0; j < k - 1; ++j) {
            const int i = order[j];
            in_prefix[i] = 1;
            vol += ind.deg(i);
            // moving i inside flips the status of its incident edge weight
            for (int t = 0; t < k; ++t) {
                if (t == i) continue;
                const double w =
                    ind.M(i, t) * std::sqrt(std::max(ind.deg(i), 0.0) * std::max(ind.deg(t), 0.0));
                if (w == 0.0) continue;
                cut += in_prefix[t] ? -w : w;
            }
            const double minvol = std::min(vol, total_vol - vol);
            const double cond = cut <= 1e-300 ? 0.0 : cut / std::max(minvol, 1e-300);
            if (cond < best_cond) {
                best_cond = cond;
                best_j = j;
            }
        }
        std::vector<int> left, right;
        for (int j = 0; j < k; ++j) {
            (j <= best_j ? left : right).push_back(vs[order[j]]);
        }
        for (int v : vs) local[v] = -1;
        std::sort(left.begin(), left.end());
        std::sort(right.begin(), right.end());
        run(std::move(left), depth + 1);
        run(std::move(right), depth + 1);
    }
};

}  // namespace

double second_eigenvalue_normalized(const UndirectedGraph& G,
                                    const std::vector<int>& vertices) {
    const int k = static_cast<int>(vertices.size());
    if (k < 2) return -1.0;
    std::vector<int> local(G.n, -1);
    for (int i = 0; i < k; ++i) local[vertices[i]] = i;
    const Induced ind = induced_normalized(G, vertices, local);
    Eigen::SelfAdjointEigenSolver<Md> es(ind.M, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(k - 2);
}

double second_eigenvalue_normalized(const UndirectedGraph& G) {
    std::vector<int> all(G.n);
    std::iota(all.begin(), all.end(), 0);
    return second_eigenvalue_normalized(G, all);
}

ExpanderPartition expander_partition(const UndirectedGraph& G, double phi) {
    if (!(phi > 0.0 && phi < 1.0)) {
        throw std::invalid_argument("expander_partition: phi must lie in (0, 1)");
    }
    ExpanderPartition out;
    out.phi = phi;

    const auto deg = undirected_degrees(G);
    std::vector<int> active;
    for (int v = 0; v < G.n; ++v) {
        if (deg[v].is_zero()) {
            out.parts.push_back({v});
        } else {
            active.push_back(v);
        }
    }
    if (!active.empty()) {
        Splitter sp{G, phi,
                    2 * static_cast<int>(std::ceil(std::log2(std::max(G.n, 2)))) + 8,
                    std::vector<int>(G.n, -1),
                    {}};
        sp.run(std::move(active), 0);
        for (auto& p : sp.parts) out.parts.push_back(std::move(p));
    }

    std::vector<int> part_of(G.n, -1);
    for (size_t p = 0; p < out.parts.size(); ++p) {
        for (int v : out.parts[p]) part_of[v] = static_cast<int>(p);
    }
    for (int e = 0; e < static_cast<int>(G.edges.size()); ++e) {
        if (part_of[G.edges[e].tail] != part_of[G.edges[e].head]) out.crossing.push_back(e);
    }
    out.crossing_fraction = G.edges.empty()
                                ? 0.0
                                : static_cast<double>(out.crossing.size()) /
                                      static_cast<double>(G.edges.size());
    return out;
}

}  // namespace svsparse
