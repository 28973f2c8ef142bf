#include "svsparse/walks.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "svsparse/errors.hpp"

namespace svsparse {

namespace {

// reachability over positive-weight edges, both directions from vertex 0
bool strongly_connected(const WeightedDigraph& G) {
    const int n = G.n;
    if (n <= 1) return true;
    std::vector<std::vector<int>> fwd(n), bwd(n);
    for (const Edge& e : G.edges) {
        if (e.w.is_zero()) continue;
        fwd[e.tail].push_back(e.head);
        bwd[e.head].push_back(e.tail);
    }
    const auto reaches_all = [n](const std::vector<std::vector<int>>& adj) {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int u : adj[v]) {
                if (!seen[u]) {
                    seen[u] = 1;
                    ++count;
                    stack.push_back(u);
                }
            }
        }
        return count == n;
    };
    return reaches_all(fwd) && reaches_all(bwd);
}

Dyadic ceil_to_grid(const Dyadic& x, int t) {
    const Dyadic f = x.floor_to_grid(t);
    return f == x ? f : f + Dyadic(1, t);
}

// quadrant masses around a set X: (stay in X, leave X, enter X, stay out)
struct Quad {
    double in_in = 0, in_out = 0, out_in = 0, out_out = 0;
};

std::vector<char> set_flags(int n, const std::vector<int>& X, const char* what) {
    std::vector<char> f(n, 0);
    for (int v : X) {
        if (v < 0 || v >= n) throw std::out_of_range(std::string(what) + " vertex out of range");
        f[v] = 1;
    }
    return f;
}

CutQuery quadrants_dense(const Md& M, const std::vector<int>& S, const std::vector<int>& T) {
    const int n = static_cast<int>(M.rows());
    const auto fs = set_flags(n, S, "S");
    const auto ft = set_flags(n, T, "T");
    CutQuery q;
    q.S = S;
    q.T = T;
    Quad qs, qt;
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            const double m = M(v, u);  // mass u -> v
            if (fs[u] && ft[v]) q.value += m;
            (fs[u] ? (fs[v] ? qs.in_in : qs.in_out) : (fs[v] ? qs.out_in : qs.out_out)) += m;
            (ft[u] ? (ft[v] ? qt.in_in : qt.in_out) : (ft[v] ? qt.out_in : qt.out_out)) += m;
        }
    }
    q.cut_S = qs.in_out;
    q.uncut_S = (qs.in_in + qs.out_out) / 2.0;
    q.cut_T = qt.in_out;
    q.uncut_T = (qt.in_in + qt.out_out) / 2.0;
    return q;
}

}  // namespace

StationaryInfo stationary(const WeightedDigraph& G) {
    if (G.n <= 0) throw std::invalid_argument("stationary: empty graph");
    if (!strongly_connected(G)) {
        throw NotDefined("stationary: graph is not strongly connected");
    }
    StationaryInfo st;
    const int n = G.n;
    if (n == 1) {
        st.pi = Vd::Ones(1);
        st.pi_min = 1.0;
        st.residual = 0.0;
        return st;
    }
    const Md W = walk_matrix(G);
    // (W - I) pi = 0 with the last balance row swapped for normalization
    Md M = W - Md::Identity(n, n);
    M.row(n - 1).setOnes();
    Vd rhs = Vd::Zero(n);
    rhs(n - 1) = 1.0;
    Vd pi = Eigen::FullPivLU<Eigen::MatrixXd>(M).solve(rhs);
    const double sum = pi.sum();
    if (!(sum > 0.0)) throw NotDefined("stationary: solve failed");
    pi /= sum;
    st.pi = pi;
    st.pi_min = pi.minCoeff();
    st.residual = (W * pi - pi).norm();
    if (!(st.pi_min > 0.0) || !(st.residual <= 1e-10)) {
        throw NotDefined("stationary: solve did not certify");
    }
    return st;
}

WeightedDigraph eulerian_scale(const WeightedDigraph& G, const StationaryInfo& st, int t0) {
    if (t0 < 1 || t0 > 120) throw std::invalid_argument("eulerian_scale: grid out of range");
    const WeightedDigraph C = coalesce(G);
    const int n = C.n;
    if (st.pi.size() != n) throw std::invalid_argument("eulerian_scale: pi has the wrong size");
    const auto [din, dout] = degrees(C);
    std::vector<double> dout_d(n);
    for (int v = 0; v < n; ++v) dout_d[v] = dout[v].to_double();

    WeightedDigraph H;
    H.n = n;
    H.name = G.name;
    std::vector<Dyadic> in_sum(n), out_sum(n);
    for (const Edge& e : C.edges) {
        const double mu = st.pi(e.tail) * e.w.to_double() / dout_d[e.tail];
        const auto md = Dyadic::from_double(mu);
        if (!md) throw std::invalid_argument("eulerian_scale: mass not representable");
        const Dyadic w = md->floor_to_grid(t0);
        if (w.is_zero()) continue;
        H.edges.push_back({e.tail, e.head, w});
        out_sum[e.tail] = out_sum[e.tail] + w;
        in_sum[e.head] = in_sum[e.head] + w;
    }
    // per-vertex target: the rounded-up stationary mass, bumped when the
    // floored edge masses already exceed it
    std::vector<Dyadic> target(n);
    for (int v = 0; v < n; ++v) {
        const auto pv = Dyadic::from_double(st.pi(v));
        if (!pv) throw std::invalid_argument("eulerian_scale: pi not representable");
        Dyadic t = ceil_to_grid(*pv, t0);
        if (in_sum[v] > t) t = in_sum[v];
        if (out_sum[v] > t) t = out_sum[v];
        target[v] = t;
    }
    return patch_to_degrees(H, target, target);
}

Md lazify(const Md& N, double gamma) {
    const int n = static_cast<int>(N.rows());
    return Md((1.0 - gamma) * N + gamma * Md::Identity(n, n));
}

WeightedDigraph lazify_graph(const WeightedDigraph& G, const Dyadic& gamma) {
    if (gamma >= Dyadic::one()) throw std::invalid_argument("lazify_graph: gamma must be < 1");
    const EulerianCheck chk = validate_eulerian(G);
    if (!chk.ok()) throw DegreeMismatch("lazify_graph requires an Eulerian input");
    if (gamma.is_zero()) return coalesce(G);
    const Dyadic keep = Dyadic::one() - gamma;
    WeightedDigraph H;
    H.n = G.n;
    H.name = G.name;
    for (const Edge& e : G.edges) {
        const Dyadic w = keep * e.w;
        if (!w.is_zero()) H.edges.push_back({e.tail, e.head, w});
    }
    for (int v = 0; v < G.n; ++v) {
        const Dyadic loop = gamma * chk.view->degree[v];
        if (!loop.is_zero()) H.edges.push_back({v, v, loop});
    }
    return coalesce(H);
}

CutQuery cut_value(const WeightedDigraph& G, const std::vector<int>& S,
                   const std::vector<int>& T) {
    const StationaryInfo st = stationary(G);
    Md M;
    if (G.n == 1) {
        M = Md::Ones(1, 1);
    } else {
        M = walk_matrix(G) * st.pi.asDiagonal();
    }
    return quadrants_dense(M, S, T);
}

CutQuery cut_value_doubly_stochastic(const Md& W, const std::vector<int>& S,
                                     const std::vector<int>& T) {
    if (W.rows() != W.cols() || W.rows() < 1) {
        throw std::invalid_argument("cut query needs a square walk matrix");
    }
    const Md M = W / static_cast<double>(W.rows());
    return quadrants_dense(M, S, T);
}

CutQuery cut_mass(const Md& M, const std::vector<int>& S, const std::vector<int>& T) {
    if (M.rows() != M.cols()) throw std::invalid_argument("cut query needs a square mass matrix");
    return quadrants_dense(M, S, T);
}

ScaledPowerResult sparsify_scaled_power(double eps, double delta, long ell,
                                        const WeightedDigraph& G, double s_lower,
                                        uint64_t seed, const SparsifyOptions& opts) {
    if (!(eps > 0.0) || eps > 0.4999) {
        throw std::invalid_argument("sparsify_scaled_power: eps must lie in (0, 0.4999]");
    }
    if (!(delta > 0.0) || delta >= 1.0) {
        throw std::invalid_argument("sparsify_scaled_power: delta must lie in (0, 1)");
    }
    if (ell < 1) throw std::invalid_argument("sparsify_scaled_power: ell must be >= 1");
    if (!(s_lower > 0.0)) throw std::invalid_argument("sparsify_scaled_power: s_lower must be > 0");

    ScaledPowerResult R;
    R.stat = stationary(G);
    if (s_lower > R.stat.pi_min * (1.0 + 1e-12)) {
        throw std::invalid_argument("sparsify_scaled_power: s_lower exceeds the stationary minimum");
    }
    const int n = G.n;
    const double t0f = std::ceil(std::log2(8.0 * n / (delta * s_lower)));
    R.t0 = std::max(1, static_cast<int>(t0f));
    if (R.t0 > 110) {
        throw std::invalid_argument("sparsify_scaled_power: required grid exceeds the arithmetic budget");
    }
    R.scaled = eulerian_scale(G, R.stat, R.t0);

    const auto gd = Dyadic::from_double(delta * s_lower / 4.0);
    if (!gd) throw std::invalid_argument("sparsify_scaled_power: gamma not representable");
    R.gamma = gd->floor_to_grid(R.t0 + 2);
    if (R.gamma.is_zero()) R.gamma = Dyadic(1, R.t0 + 2);
    R.lazified = lazify_graph(R.scaled, R.gamma);

    const double sigma = second_normalized_singular(R.lazified);
    if (sigma >= 1.0 - 1e-12) {
        throw SingularityTooClose("sparsify_scaled_power: lazified walk has no singular value gap");
    }
    R.tau = (1.0 + 1e-6) / (1.0 - sigma);

    PowerResult pr = sparsify_power(eps, R.lazified, ell, R.tau, seed, opts);
    R.graph = std::move(pr.graph);
    R.plan = std::move(pr.plan);
    return R;
}

CutQuery CutEstimator::query(const std::vector<int>& S, const std::vector<int>& T) const {
    const int n = H.n;
    const auto fs = set_flags(n, S, "S");
    const auto ft = set_flags(n, T, "T");
    CutQuery q;
    q.S = S;
    q.T = T;
    // the held weights are absolute masses; sums are exact in dyadic arithmetic
    Dyadic val, sii, sio, soi, soo, tii, tio, toi, too;
    for (const Edge& e : H.edges) {
        const int u = e.tail, v = e.head;
        if (fs[u] && ft[v]) val = val + e.w;
        Dyadic& qs = fs[u] ? (fs[v] ? sii : sio) : (fs[v] ? soi : soo);
        qs = qs + e.w;
        Dyadic& qt = ft[u] ? (ft[v] ? tii : tio) : (ft[v] ? toi : too);
        qt = qt + e.w;
    }
    q.value = val.to_double();
    q.cut_S = sio.to_double();
    q.uncut_S = (sii + soo).mul_pow2(-1).to_double();
    q.cut_T = tio.to_double();
    q.uncut_T = (tii + too).mul_pow2(-1).to_double();
    return q;
}

CutEstimator estimate_cut(double eps, long ell, const WeightedDigraph& G, double s_lower,
                          uint64_t seed, const SparsifyOptions& opts) {
    if (!(eps > 0.0) || eps > 0.4999) {
        throw std::invalid_argument("estimate_cut: eps must lie in (0, 0.4999]");
    }
    if (G.n <= 0) throw std::invalid_argument("estimate_cut: empty graph");
    double U = 1.0;
    for (const Edge& e : G.edges) U = std::max(U, std::ceil(e.w.to_double()));
    const double ratio = s_lower / (2.0 * U);
    const double delta = eps * ratio * ratio * ratio / (2.0 * G.n);

    ScaledPowerResult sp = sparsify_scaled_power(eps, delta, ell, G, s_lower, seed, opts);

    CutEstimator est;
    est.stat = std::move(sp.stat);
    est.eps = eps;
    est.ell = ell;
    est.s_lower = s_lower;
    est.delta = delta;
    est.plan = std::move(sp.plan);
    WeightedDigraph H;
    H.n = sp.graph.n;
    H.name = sp.graph.name;
    for (const Edge& e : sp.graph.edges) {
        if (e.w.to_double() >= delta) H.edges.push_back(e);
    }
    est.H = coalesce(H);
    return est;
}

}  // namespace svsparse
