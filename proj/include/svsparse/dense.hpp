#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>

#include "svsparse/graph.hpp"

namespace svsparse {

using Md = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vd = Eigen::VectorXd;

// Vertex-count cap for dense certification; overridden by the
// SVSPARSE_ORACLE_CAP environment variable. Randomized stages skip their
// self-check above the cap.
int oracle_cap();

// Dense views. Adjacency convention: A(head, tail), so columns index
// sources and walk matrices are column-stochastic.
Md adjacency(const WeightedDigraph& G);
Md adjacency(const UndirectedGraph& G);
std::pair<Vd, Vd> degree_vectors(const WeightedDigraph& G);  // (d_in, d_out)
Vd degree_vector(const UndirectedGraph& G);
Md walk_matrix(const WeightedDigraph& G);            // A * pinv(D_out)
Md normalized_adjacency(const WeightedDigraph& G);   // D_in^{+/2} A D_out^{+/2}
Md normalized_adjacency(const UndirectedGraph& G);   // D^{+/2} A D^{+/2}

double spectral_norm(const Md& M);
Md matrix_power(Md M, long k);

// M^{+/2} by symmetric eigendecomposition; eigenvalues below cutoff*lambda_max
// are treated as kernel. Requires M symmetric within 1e-10*||M|| and
// eigenvalues >= -1e-9*||M||, else NotPsd.
Md psd_pinv_sqrt(const Md& M, double cutoff = 1e-9);
Md psd_pinv(const Md& M, double cutoff = 1e-9);

struct SvDefinedReport {
    bool kernel_in_ok = false;   // ker(D_in) inside the left kernel of A
    bool kernel_out_ok = false;  // ker(D_out) inside the right kernel of A
    bool sigma_ok = false;       // sigma_max(D_in^{+/2} A D_out^{+/2}) <= 1 + 1e-9
    bool e_psd = false;          // D_in - A D_out^+ A^T is PSD
    bool f_psd = false;          // D_out - A^T D_in^+ A is PSD
    bool block_psd = false;      // [[D_in, A], [A^T, D_out]] is PSD
    double sigma_max = 0.0;
    bool all() const {
        return kernel_in_ok && kernel_out_ok && sigma_ok && e_psd && f_psd && block_psd;
    }
};

SvDefinedReport check_sv_defined(const Md& A, const Md& Din, const Md& Dout);

struct ApproxReport {
    std::string notion;  // "standard" | "uc" | "sv" | "sv-normalized"
    double epsilon = 0.0;
    bool kernel_ok = true;  // epsilon is +infinity exactly when this is false
    int grid_points = 0;    // uc only
    double grid_gap = 0.0;  // uc only: refinement resolution achieved
    std::optional<std::pair<Vd, Vd>> witness;  // test vectors attaining epsilon
    std::string details;
};

// ||E^{+/2} (At - A) F^{+/2}|| when the difference respects both kernels
// (residual <= 1e-8 * ||At - A|| plus a floating-point noise floor scaled to
// the inputs, so equal-up-to-rounding matrices never read as an escape),
// +infinity otherwise.
double measure_matrix_approx(const Md& At, const Md& A, const Md& E, const Md& F);

// Error against E = D_in - A D_out^+ A^T and F = D_out - A^T D_in^+ A,
// reported with the leading factor 2 so that a perfect expander measured
// against the complete graph reads as twice its nontrivial singular value.
ApproxReport measure_sv_eps(const Md& At, const Md& A, const Md& Din, const Md& Dout);
ApproxReport measure_sv_eps(const WeightedDigraph& Gt, const WeightedDigraph& G);
// Doubly-substochastic convenience: D_in = D_out = I.
ApproxReport measure_svn_eps(const Md& Nt, const Md& N);

// Error against E = F = D - (A + A^T)/2; NotDefined if that matrix is not PSD.
double measure_std_eps(const Md& At, const Md& A, const Md& D);

// Supremum over unit-modulus z of the standard error of (zAt, zA), via a
// uniform grid plus golden-section refinement of each local maximum. The
// reported value is an evaluation point, hence a lower bound on the supremum.
ApproxReport measure_uc_eps(const Md& At, const Md& A, const Md& D, int z_grid_size = 256);

// sigma_2 of D^{-1/2} A D^{-1/2}; NotDefined on isolated vertices.
double second_normalized_singular(const EulerianView& G);
double second_normalized_singular(const WeightedDigraph& G);

}  // namespace svsparse
