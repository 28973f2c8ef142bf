#include "svsparse/solver.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "svsparse/errors.hpp"
#include "svsparse/powers.hpp"
#include "svsparse/rng.hpp"

namespace svsparse {

namespace {

using Mc = Eigen::MatrixXcd;

double spectral_norm_c(const Mc& X) {
    if (X.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Mc> es(Mc(X.adjoint() * X));
    const double top = es.eigenvalues().maxCoeff();
    return std::sqrt(std::max(0.0, top));
}

int degree_grid(const WeightedDigraph& G) {
    int s = 0;
    const auto [din, dout] = degrees(G);
    for (const Dyadic& d : din) s = std::max(s, d.scale());
    for (const Dyadic& d : dout) s = std::max(s, d.scale());
    return s;
}

}  // namespace

bool is_normal(const Md& W, double tol) {
    if (W.rows() != W.cols()) return false;
    const double comm = spectral_norm(Md(W.transpose() * W - W * W.transpose()));
    const double scale = spectral_norm(W);
    return comm <= tol * scale * scale;
}

Md deflation_projector(int n) {
    return Md(Md::Identity(n, n) - Md::Ones(n, n) / static_cast<double>(n));
}

PsChain ps_chain(const WeightedDigraph& G, int k, double eps, SquareMode mode,
                 uint64_t seed, const SparsifyOptions& opts) {
    if (k < 1) throw std::invalid_argument("ps_chain: k must be >= 1");
    if (!(eps >= 0.0)) throw std::invalid_argument("ps_chain: eps must be >= 0");
    const WeightedDigraph G0 = coalesce(G);
    PsChain chain;
    chain.k = k;
    chain.W_list.push_back(normalized_adjacency(G0));
    const Md& W0 = chain.W_list[0];
    if (!is_normal(W0)) throw NotDefined("ps_chain requires a normal walk matrix");
    if (spectral_norm(W0) > 1.0 + 1e-9) {
        throw std::invalid_argument("ps_chain: walk matrix norm exceeds 1");
    }
    const double budget = 1.0 / (4.0 * k);

    Rng master(seed);
    WeightedDigraph cur = G0;
    for (int i = 1; i < k; ++i) {
        Md Wi;
        switch (mode) {
            case SquareMode::exact: {
                Wi = Md(chain.W_list.back() * chain.W_list.back());
                break;
            }
            case SquareMode::sparse: {
                const WeightedDigraph P =
                    sparsify_product(eps, cur, cur, master.next(), opts);
                cur = fix_edge_weights(std::max(48, degree_grid(cur)), P);
                Wi = normalized_adjacency(cur);
                break;
            }
            case SquareMode::drsq: {
                // unweighted regular chain; pick c so a random expander is
                // likely to certify lambda <= 1/(8k)
                const double target = 1.0 / (8.0 * k);
                int d = 0;
                for (const Edge& e : cur.edges) d += e.tail == 0 ? 1 : 0;
                const int c = static_cast<int>(std::ceil(7.0 / (target * target)));
                const ExpanderSpec H = make_expander(d, c, master.next(), target);
                cur = derandomized_square(cur, H);
                Wi = normalized_adjacency(cur);
                break;
            }
        }
        const double measured = measure_svn_eps(Wi, Md(chain.W_list.back() * chain.W_list.back())).epsilon;
        if (measured > budget) {
            throw SparsifyFailure("ps_chain: measured step error exceeds the 1/(4k) budget");
        }
        chain.eps_list.push_back(measured);
        chain.W_list.push_back(std::move(Wi));
    }
    return chain;
}

Preconditioner ps_precondition(const PsChain& chain, const Md& P_k) {
    if (chain.W_list.empty()) throw std::invalid_argument("ps_precondition: empty chain");
    const Eigen::Index n = chain.W_list[0].rows();
    for (const Md& W : chain.W_list) {
        if (W.rows() != n || W.cols() != n) {
            throw std::invalid_argument("ps_precondition: dimension mismatch in chain");
        }
    }
    if (P_k.rows() != n || P_k.cols() != n) {
        throw std::invalid_argument("ps_precondition: P_k dimension mismatch");
    }
    const Md I = Md::Identity(n, n);
    Md P = P_k;
    for (int i = static_cast<int>(chain.W_list.size()) - 1; i >= 0; --i) {
        const Md A = I + chain.W_list[i];
        P = Md(0.5 * (I + A * P * A));
    }
    Preconditioner out;
    out.error = precond_error(P, chain.W_list[0]);
    out.P = std::move(P);
    return out;
}

double precond_error(const Md& P, const Md& W) {
    if (W.rows() != W.cols() || P.rows() != P.cols() || P.rows() != W.rows()) {
        throw std::invalid_argument("precond_error: dimension mismatch");
    }
    if (!is_normal(W)) throw NotDefined("precond_error requires a normal matrix");
    const Eigen::Index n = W.rows();
    Eigen::ComplexSchur<Mc> schur(W.cast<std::complex<double>>(), true);
    if (schur.info() != Eigen::Success) throw NotDefined("precond_error: eigensolve failed");
    const Mc& U = schur.matrixU();
    Eigen::VectorXcd mu(n);
    double mu_max = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        mu(i) = std::complex<double>(1.0, 0.0) - schur.matrixT()(i, i);
        mu_max = std::max(mu_max, std::abs(mu(i)));
    }
    const double cut = 1e-9 * std::max(mu_max, 1e-300);
    Eigen::VectorXcd s(n), pinv(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const bool kernel = std::abs(mu(i)) <= cut;
        s(i) = kernel ? 0.0 : std::sqrt(mu(i));  // principal branch, Re >= 0
        pinv(i) = kernel ? 0.0 : 1.0 / mu(i);
    }
    const Mc S = U * s.asDiagonal() * U.adjoint();
    const Mc Mp = U * pinv.asDiagonal() * U.adjoint();
    const Mc X = S * (P.cast<std::complex<double>>() - Mp) * S;
    return spectral_norm_c(X);
}

double precond_error_bnorm(const Md& P, const Md& W) {
    if (W.rows() != W.cols() || P.rows() != P.cols() || P.rows() != W.rows()) {
        throw std::invalid_argument("precond_error: dimension mismatch");
    }
    if (!is_normal(W)) throw NotDefined("precond_error requires a normal matrix");
    const Eigen::Index n = W.rows();
    const Md M = Md(Md::Identity(n, n) - W);
    // B = (M^{1/2})^* M^{1/2} = (M^T M)^{1/2} for normal M; everything real
    Eigen::SelfAdjointEigenSolver<Md> es(Md(M.transpose() * M));
    if (es.info() != Eigen::Success) throw NotDefined("precond_error: eigensolve failed");
    const Md& V = es.eigenvectors();
    const Vd lam = es.eigenvalues().cwiseMax(0.0);
    const double cut = 1e-18 * std::max(lam.maxCoeff(), 1e-300);
    Vd broot(n), binv(n), proj(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const bool kernel = lam(i) <= cut;
        broot(i) = kernel ? 0.0 : std::pow(lam(i), 0.25);
        binv(i) = kernel ? 0.0 : std::pow(lam(i), -0.25);
        proj(i) = kernel ? 0.0 : 1.0;
    }
    const Md Bh = V * broot.asDiagonal() * V.transpose();
    const Md Bih = V * binv.asDiagonal() * V.transpose();
    const Md Pi = V * proj.asDiagonal() * V.transpose();
    const Md X = Md(Bh * (P * M - Pi) * Bih);
    return spectral_norm(X);
}

}  // namespace svsparse
