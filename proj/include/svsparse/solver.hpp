#pragma once

#include <cstdint>
#include <vector>

#include "svsparse/dense.hpp"
#include "svsparse/graph.hpp"
#include "svsparse/sparsify.hpp"

namespace svsparse {

// ||W^T W - W W^T|| <= tol * ||W||^2, spectral norms.
bool is_normal(const Md& W, double tol = 1e-9);

enum class SquareMode { exact, drsq, sparse };

// Repeated-square chain W_0 .. W_{k-1} with W_i close to W_{i-1}^2, plus the
// per-step errors measured against the previous chain matrix squared.
struct PsChain {
    std::vector<Md> W_list;        // k matrices
    std::vector<double> eps_list;  // k-1 measured step errors
    int k = 0;
};

// Builds the chain from a graph realization. exact squares densely; sparse
// sparsifies the edge-product graph per level; drsq replaces each square by a
// derandomized square through a certified expander (unweighted regular inputs
// only). Throws SparsifyFailure when a measured step exceeds 1/(4k).
PsChain ps_chain(const WeightedDigraph& G, int k, double eps, SquareMode mode,
                 uint64_t seed, const SparsifyOptions& opts = {});

struct Preconditioner {
    Md P;
    double error = 0.0;  // measured against the chain's W_0
};

// Unrolls P_i = (I + (I + W_i) P_{i+1} (I + W_i)) / 2 from the supplied P_k
// down to P_0 and measures the preconditioner error against W_0.
Preconditioner ps_precondition(const PsChain& chain, const Md& P_k);

// For square matrices of walk chains on n vertices: the standard tail
// projector I - (1/n) * ones.
Md deflation_projector(int n);

// ||(I-W)^{1/2} [P - (I-W)^+] (I-W)^{1/2}|| via the eigendecomposition of the
// normal matrix W, principal branch of the square root.
double precond_error(const Md& P, const Md& W);

// Same quantity in its weighted-norm form ||B^{1/2} (P(I-W) - proj) B^{+1/2}||
// with B = ((I-W)^{1/2})^* (I-W)^{1/2}; agrees with precond_error to 1e-8.
double precond_error_bnorm(const Md& P, const Md& W);

}  // namespace svsparse
