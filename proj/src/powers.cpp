#include "svsparse/powers.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "svsparse/dense.hpp"
#include "svsparse/errors.hpp"
#include "svsparse/rng.hpp"

namespace svsparse {

namespace {

struct U256 {
    u128 hi = 0;
    u128 lo = 0;
};

U256 mul_256(u128 a, u128 b) {
    const u128 mask = (~u128(0)) >> 64;
    const u128 a0 = a & mask, a1 = a >> 64;
    const u128 b0 = b & mask, b1 = b >> 64;
    const u128 p00 = a0 * b0, p01 = a0 * b1, p10 = a1 * b0, p11 = a1 * b1;
    U256 r;
    r.lo = p00;
    u128 mid = p01 + p10;
    const u128 carry_mid = mid < p01 ? (u128(1) << 64) : 0;
    const u128 lo2 = r.lo + (mid << 64);
    r.hi = p11 + (mid >> 64) + carry_mid + (lo2 < r.lo ? 1 : 0);
    r.lo = lo2;
    return r;
}

U256 shl_256(U256 v, int k) {
    while (k >= 128) {
        if (v.hi != 0) throw OverflowError("product weight exceeds 256 bits");
        v.hi = v.lo;
        v.lo = 0;
        k -= 128;
    }
    if (k == 0) return v;
    if (v.hi >> (128 - k)) throw OverflowError("product weight exceeds 256 bits");
    v.hi = (v.hi << k) | (v.lo >> (128 - k));
    v.lo <<= k;
    return v;
}

U256 shr_256(U256 v, int k) {
    while (k >= 128) {
        v.lo = v.hi;
        v.hi = 0;
        k -= 128;
    }
    if (k == 0) return v;
    v.lo = (v.lo >> k) | (v.hi << (128 - k));
    v.hi >>= k;
    return v;
}

// floor(v / d) for quotients that fit in 128 bits; binary long division.
u128 div_256_by_128(const U256& v, u128 d) {
    if (d == 0) throw std::invalid_argument("division by zero");
    if (d >> 127) throw OverflowError("divisor too wide");
    if (v.hi == 0) return v.lo / d;
    u128 q = 0, r = 0;
    for (int i = 255; i >= 0; --i) {
        r = (r << 1) | ((i >= 128 ? (v.hi >> (i - 128)) : (v.lo >> i)) & 1);
        if (r >= d) {
            r -= d;
            if (i >= 128) throw OverflowError("quotient exceeds 128 bits");
            q |= u128(1) << i;
        }
    }
    return q;
}

// floor(a * b / d * 2^t) / 2^t with 256-bit intermediates; d > 0.
Dyadic floor_quotient_to_grid(const Dyadic& a, const Dyadic& b, const Dyadic& d, int t) {
    if (a.is_zero() || b.is_zero()) return Dyadic::zero();
    U256 prod = mul_256(a.num(), b.num());
    const int e = t - a.scale() - b.scale() + d.scale();
    if (e >= 0) {
        prod = shl_256(prod, e);
    } else {
        prod = shr_256(prod, -e);
    }
    return Dyadic(div_256_by_128(prod, d.num()), t);
}

std::vector<Dyadic> shortfalls(const std::vector<Dyadic>& target,
                               const std::vector<Dyadic>& cur) {
    std::vector<Dyadic> out(target.size());
    for (size_t v = 0; v < target.size(); ++v) {
        if (target[v] < cur[v]) {
            throw DegreeMismatch("current degree exceeds its target");
        }
        out[v] = target[v] - cur[v];
    }
    return out;
}

}  // namespace

ExpanderSpec complete_expander(int d) {
    if (d < 1) throw std::invalid_argument("complete_expander: d < 1");
    ExpanderSpec H;
    H.d = d;
    H.c = d;
    H.table.assign(d, std::vector<int>(d));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) H.table[i][j] = j;
    }
    H.lambda = 0.0;  // walk matrix is rank one
    return H;
}

ExpanderSpec make_expander(int d, int c, uint64_t seed, double lambda_target,
                           int max_tries) {
    if (d < 1 || c < 1) throw std::invalid_argument("make_expander: d, c must be >= 1");
    Rng root(seed);
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        Rng r = root.child(attempt);
        ExpanderSpec H;
        H.d = d;
        H.c = c;
        H.table.assign(d, std::vector<int>(c));
        std::vector<int> perm(d);
        for (int j = 0; j < c; ++j) {
            for (int i = 0; i < d; ++i) perm[i] = i;
            shuffle(perm, r);
            for (int i = 0; i < d; ++i) H.table[i][j] = perm[i];
        }
        if (d == 1) {
            H.lambda = 0.0;
            return H;
        }
        Md W = Md::Zero(d, d);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < c; ++j) W(H.table[i][j], i) += 1.0 / c;
        }
        Eigen::BDCSVD<Md> svd(W);
        H.lambda = svd.singularValues()(1);
        if (H.lambda <= lambda_target) return H;
    }
    throw SparsifyFailure("expander generation failed to certify its eigenvalue target");
}

WeightedDigraph patch_to_degrees(const WeightedDigraph& G,
                                 const std::vector<Dyadic>& din_target,
                                 const std::vector<Dyadic>& dout_target) {
    const auto [din, dout] = degrees(G);
    const std::vector<Dyadic> sin = shortfalls(din_target, din);
    const std::vector<Dyadic> sout = shortfalls(dout_target, dout);
    Dyadic tin, tout;
    for (const Dyadic& s : sin) tin = tin + s;
    for (const Dyadic& s : sout) tout = tout + s;
    if (tin != tout) throw DegreeMismatch("in/out shortfall totals differ");

    WeightedDigraph H = G;
    std::vector<Dyadic> need_in = sin, need_out = sout;
    int u = 0, v = 0;
    const int n = G.n;
    while (true) {
        while (u < n && need_out[u].is_zero()) ++u;
        while (v < n && need_in[v].is_zero()) ++v;
        if (u == n || v == n) break;
        const Dyadic w = std::min(need_out[u], need_in[v]);
        H.edges.push_back({u, v, w});
        need_out[u] = need_out[u] - w;
        need_in[v] = need_in[v] - w;
    }
    return H;
}

WeightedDigraph exact_product(const WeightedDigraph& G1, const WeightedDigraph& G2) {
    const EulerianCheck c1 = validate_eulerian(G1);
    const EulerianCheck c2 = validate_eulerian(G2);
    if (!c1.ok() || !c2.ok()) throw DegreeMismatch("exact_product requires Eulerian inputs");
    if (G1.n != G2.n) throw DegreeMismatch("exact_product: vertex counts differ");
    const int n = G1.n;
    const std::vector<Dyadic>& D = c1.view->degree;
    for (int v = 0; v < n; ++v) {
        if (D[v] != c2.view->degree[v]) {
            throw DegreeMismatch("exact_product: degree vectors differ");
        }
        if (D[v].is_zero()) throw DegreeMismatch("exact_product: zero-degree vertex");
    }

    std::vector<std::vector<const Edge*>> into(n), out_of(n);
    for (const Edge& e : G1.edges) into[e.head].push_back(&e);
    for (const Edge& e : G2.edges) out_of[e.tail].push_back(&e);

    // first pass: exact divisions throughout, else fall back to a common
    // fine grid with degree repair
    WeightedDigraph P;
    P.n = n;
    bool exact = true;
    for (int k = 0; k < n && exact; ++k) {
        for (const Edge* e1 : into[k]) {
            for (const Edge* e2 : out_of[k]) {
                std::optional<Dyadic> q;
                try {
                    q = (e1->w * e2->w).div_exact(D[k]);
                } catch (const OverflowError&) {
                    q = std::nullopt;
                }
                if (!q) {
                    exact = false;
                    break;
                }
                P.edges.push_back({e1->tail, e2->head, *q});
            }
            if (!exact) break;
        }
    }
    if (!exact) {
        int degree_scale = 0;
        for (int v = 0; v < n; ++v) degree_scale = std::max(degree_scale, D[v].scale());
        const int t = degree_scale + 64;
        P.edges.clear();
        for (int k = 0; k < n; ++k) {
            for (const Edge* e1 : into[k]) {
                for (const Edge* e2 : out_of[k]) {
                    const Dyadic w = floor_quotient_to_grid(e1->w, e2->w, D[k], t);
                    if (!w.is_zero()) P.edges.push_back({e1->tail, e2->head, w});
                }
            }
        }
    }
    P = coalesce(P);
    if (!exact) P = patch_to_degrees(P, D, D);
    P.name = G2.name.empty() || G1.name.empty() ? "" : G2.name + "*" + G1.name;
    return P;
}

WeightedDigraph derandomized_square(const WeightedDigraph& G, const ExpanderSpec& H) {
    const int n = G.n;
    std::vector<std::vector<int>> out_edges(n);
    std::vector<int> in_slot(G.edges.size());
    std::vector<int> in_count(n, 0);
    for (int e = 0; e < static_cast<int>(G.edges.size()); ++e) {
        if (!(G.edges[e].w == Dyadic::one())) {
            throw std::invalid_argument("derandomized_square: weights must all equal 1");
        }
        out_edges[G.edges[e].tail].push_back(e);
        in_slot[e] = in_count[G.edges[e].head]++;
    }
    const int d = n > 0 ? static_cast<int>(out_edges[0].size()) : 0;
    for (int v = 0; v < n; ++v) {
        if (static_cast<int>(out_edges[v].size()) != d || in_count[v] != d) {
            throw std::invalid_argument("derandomized_square: graph is not d-regular");
        }
    }
    if (H.d != d) throw std::invalid_argument("derandomized_square: expander size != degree");
    std::vector<int> hits(std::max(d, 1), 0);
    for (int i = 0; i < d; ++i) {
        if (static_cast<int>(H.table[i].size()) != H.c) {
            throw std::invalid_argument("derandomized_square: ragged expander table");
        }
        for (int j : H.table[i]) {
            if (j < 0 || j >= d) throw std::invalid_argument("derandomized_square: bad table entry");
            ++hits[j];
        }
    }
    for (int j = 0; j < d; ++j) {
        if (hits[j] != H.c) {
            throw std::invalid_argument("derandomized_square: expander table is not in-regular");
        }
    }

    WeightedDigraph S;
    S.n = n;
    S.name = G.name;
    S.edges.reserve(static_cast<size_t>(n) * d * H.c);
    for (int v = 0; v < n; ++v) {
        for (int i = 0; i < d; ++i) {
            const int e = out_edges[v][i];
            const int u = G.edges[e].head;
            const int j = in_slot[e];
            for (int t = 0; t < H.c; ++t) {
                const int e2 = out_edges[u][H.table[j][t]];
                S.edges.push_back({v, G.edges[e2].head, Dyadic::one()});
            }
        }
    }
    return S;
}

WeightedDigraph sparsify_product(double eps, const WeightedDigraph& G1,
                                 const WeightedDigraph& G2, uint64_t seed,
                                 const SparsifyOptions& opts) {
    return sv_sparsify_digraph(eps, exact_product(G1, G2), seed, opts);
}

WeightedDigraph fix_edge_weights(int t, const WeightedDigraph& G) {
    WeightedDigraph C = coalesce(G);
    const auto [din, dout] = degrees(C);
    WeightedDigraph F;
    F.n = C.n;
    F.name = G.name;
    for (const Edge& e : C.edges) {
        const Dyadic w = e.w.floor_to_grid(t);
        if (!w.is_zero()) F.edges.push_back({e.tail, e.head, w});
    }
    return patch_to_degrees(F, din, dout);
}

PowerResult sparsify_power(double eps, const WeightedDigraph& G, long ell, double tau,
                           uint64_t seed, const SparsifyOptions& opts) {
    if (!(eps > 0.0) || eps > 0.4999) {
        throw std::invalid_argument("sparsify_power: eps must lie in (0, 0.4999]");
    }
    if (ell < 1) throw std::invalid_argument("sparsify_power: ell must be >= 1");
    if (!(tau >= 1.0)) throw std::invalid_argument("sparsify_power: tau must be >= 1");
    const EulerianCheck chk = validate_eulerian(G);
    if (!chk.ok()) throw DegreeMismatch("sparsify_power requires an Eulerian input");

    const int n = G.n;
    const bool desk = opts.verify && n <= oracle_cap();
    if (desk) {
        const double sigma = second_normalized_singular(*chk.view);
        if (sigma > 1.0 - 1.0 / tau + 1e-12) {
            throw SingularityTooClose("second normalized singular value exceeds 1 - 1/tau");
        }
    }

    PowerPlan plan;
    plan.ell = ell;
    plan.eps = eps;
    for (long v = ell; v > 0; v >>= 1) plan.bits.insert(plan.bits.begin(), static_cast<int>(v & 1));
    int squarings = static_cast<int>(plan.bits.size()) - 1;
    int multiplies = 0;
    for (size_t i = 1; i < plan.bits.size(); ++i) multiplies += plan.bits[i];
    plan.stage_count = squarings + multiplies;
    plan.stage_budget = plan.stage_count > 0 ? eps / (2.0 * plan.stage_count) : 0.0;

    double U = 1.0;
    for (const Edge& e : G.edges) U = std::max(U, std::ceil(e.w.to_double()));
    const double lf = std::ceil(std::log2(64.0 * std::max(n, 1) * U *
                                          static_cast<double>(ell) * tau / eps));
    int degree_scale = 0;
    for (const Dyadic& dv : chk.view->degree) degree_scale = std::max(degree_scale, dv.scale());
    plan.l = std::max(static_cast<int>(lf), degree_scale);
    if (plan.l > 96) {
        throw std::invalid_argument("sparsify_power: requested weight grid exceeds 128-bit budget");
    }

    Rng master(seed);
    // weights finer than the working grid would exhaust 128-bit products downstream
    const WeightedDigraph base = common_scale(G) > plan.l ? fix_edge_weights(plan.l, G) : G;
    WeightedDigraph G1 = sv_sparsify_digraph(eps / 2.0, base, master.next(), opts);

    Md NG, Nprev, NG1;
    const auto record = [&](const char* kind, double budget, const WeightedDigraph& X,
                            const Md& target) {
        PowerStage st;
        st.kind = kind;
        st.budget = budget;
        st.edges = static_cast<long>(X.edges.size());
        if (desk) {
            const Md NX = normalized_adjacency(X);
            st.measured = measure_svn_eps(NX, target).epsilon;
            st.sigma2 = second_normalized_singular(X);
        }
        plan.stages.push_back(std::move(st));
    };

    if (desk) {
        NG = normalized_adjacency(G);
        NG1 = normalized_adjacency(G1);
        Nprev = NG1;
    }
    record("base", eps / 2.0, G1, NG);

    WeightedDigraph X = G1;
    const double sub = plan.stage_budget / 3.0;
    for (size_t bi = 1; bi < plan.bits.size(); ++bi) {
        {
            const WeightedDigraph P = sparsify_product(sub, X, X, master.next(), opts);
            const WeightedDigraph F = fix_edge_weights(plan.l, P);
            X = sv_sparsify_digraph(sub, F, master.next(), opts);
            if (desk) {
                const Md target = Md(Nprev * Nprev);
                record("square", plan.stage_budget, X, target);
                Nprev = normalized_adjacency(X);
            } else {
                record("square", plan.stage_budget, X, Md());
            }
        }
        if (plan.bits[bi]) {
            const WeightedDigraph P = sparsify_product(sub, G1, X, master.next(), opts);
            const WeightedDigraph F = fix_edge_weights(plan.l, P);
            X = sv_sparsify_digraph(sub, F, master.next(), opts);
            if (desk) {
                const Md target = Md(Nprev * NG1);
                record("multiply", plan.stage_budget, X, target);
                Nprev = normalized_adjacency(X);
            } else {
                record("multiply", plan.stage_budget, X, Md());
            }
        }
    }
    X.name = G.name;
    return {std::move(X), std::move(plan)};
}

}  // namespace svsparse
