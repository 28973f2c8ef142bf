#pragma once

#include <cstdint>
#include <vector>

#include "svsparse/dense.hpp"
#include "svsparse/graph.hpp"
#include "svsparse/powers.hpp"
#include "svsparse/sparsify.hpp"

namespace svsparse {

// Stationary distribution of the random walk on a strongly connected graph.
struct StationaryInfo {
    Vd pi;
    double pi_min = 0.0;
    double residual = 0.0;  // ||W pi - pi||_2
};

// Directed cut masses between two (not necessarily disjoint) vertex sets.
// value is the one-step walk mass from S to T at stationarity; the *_S/_T
// fields split the mass around each set: cut_X leaves X, uncut_X stays on
// one side. For a stochastic walk cut_X + uncut_X = 1/2.
struct CutQuery {
    std::vector<int> S, T;
    double value = 0.0;
    double cut_S = 0.0;
    double uncut_S = 0.0;
    double cut_T = 0.0;
    double uncut_T = 0.0;
};

StationaryInfo stationary(const WeightedDigraph& G);

// Rescales edge weights to mu(u->v) = pi_u * w / dout_u, rounded onto the
// 2^-t0 grid with the per-vertex degree targets restored exactly. The result
// is Eulerian with degree vector within 2^-t0 (per entry, up to the repair
// slack) of pi.
WeightedDigraph eulerian_scale(const WeightedDigraph& G, const StationaryInfo& st, int t0);

// (1-gamma) N + gamma I.
Md lazify(const Md& N, double gamma);

// Adds a gamma-weighted self-loop portion: (1-gamma) A + gamma D on the
// diagonal. Requires an Eulerian input so degrees are preserved exactly.
WeightedDigraph lazify_graph(const WeightedDigraph& G, const Dyadic& gamma);

// Walk-at-stationarity cut masses: mu(u->v) = pi_u W(v,u).
CutQuery cut_value(const WeightedDigraph& G, const std::vector<int>& S,
                   const std::vector<int>& T);

// Same masses for a doubly stochastic walk matrix, where pi is uniform.
CutQuery cut_value_doubly_stochastic(const Md& W, const std::vector<int>& S,
                                     const std::vector<int>& T);

// Raw mass sums of an arbitrary nonnegative mass matrix M(v,u) = mass(u->v).
CutQuery cut_mass(const Md& M, const std::vector<int>& S, const std::vector<int>& T);

// Scales a strongly connected graph to its stationary measure, adds a small
// lazy self-loop portion, and sparsifies the ell-th power of the result.
struct ScaledPowerResult {
    WeightedDigraph graph;     // sparsified approximation of the lazified power
    WeightedDigraph scaled;    // Eulerian rescaling of the input
    WeightedDigraph lazified;  // scaled plus the lazy loops
    StationaryInfo stat;       // of the input graph
    Dyadic gamma;
    int t0 = 0;
    double tau = 0.0;
    PowerPlan plan;
};

ScaledPowerResult sparsify_scaled_power(double eps, double delta, long ell,
                                        const WeightedDigraph& G, double s_lower,
                                        uint64_t seed, const SparsifyOptions& opts = {});

// Sparse stand-in for ell-step cut queries against a strongly connected graph.
// The held graph's weights are absolute walk masses, so queries are plain
// (exact, dyadic) weight sums.
struct CutEstimator {
    WeightedDigraph H;
    StationaryInfo stat;
    double eps = 0.0;
    long ell = 0;
    double s_lower = 0.0;
    double delta = 0.0;
    PowerPlan plan;

    CutQuery query(const std::vector<int>& S, const std::vector<int>& T) const;
};

CutEstimator estimate_cut(double eps, long ell, const WeightedDigraph& G, double s_lower,
                          uint64_t seed, const SparsifyOptions& opts = {});

}  // namespace svsparse
