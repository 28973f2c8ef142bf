#pragma once

#include <cstdint>

#include "svsparse/dyadic.hpp"
#include "svsparse/graph.hpp"

namespace svsparse {

// Deterministic test-graph generators. All randomness flows from the seed.

WeightedDigraph gen_cycle(int n);

// Self loops of weight 1/2 + delta, forward arcs of weight 1/2 - delta.
WeightedDigraph gen_lazy_cycle(int n, const Dyadic& delta);

// All ordered pairs, self loops included, weight 1 each.
WeightedDigraph gen_complete_loops(int n);

// Union of d uniformly random permutation layers, weight 1 each.
WeightedDigraph gen_regular_random(int n, int d, uint64_t seed);

// Random Hamiltonian cycle plus d-1 random permutation layers, each layer
// carrying one random integer weight in [1, 4]; Eulerian and strongly
// connected by construction.
WeightedDigraph gen_eulerian_random(int n, int d, uint64_t seed);

// Random Hamiltonian cycle (weight 1) plus `extra` random arcs with integer
// weights in [1, wmax]; strongly connected but generally not Eulerian.
WeightedDigraph gen_strong_random(int n, int extra, int wmax, uint64_t seed);

}  // namespace svsparse
