#include "svsparse/dense.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <vector>

#include "svsparse/errors.hpp"

namespace svsparse {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Eigendecomposition of a (nearly) symmetric PSD matrix, split into the
// retained half-pseudoinverse and an orthonormal kernel basis.
struct SymFactor {
    Md half_pinv;
    Md kernel;  // n x k, k = kernel dimension
    double lambda_max = 0.0;
};

SymFactor sym_factor(const Md& M, double cutoff) {
    const auto n = M.rows();
    if (M.cols() != n) throw std::invalid_argument("sym_factor: matrix not square");
    SymFactor out;
    if (n == 0) {
        out.half_pinv = Md(0, 0);
        out.kernel = Md(0, 0);
        return out;
    }
    const double scale = M.norm();
    if ((M - M.transpose()).norm() > 1e-10 * std::max(scale, 1e-300)) {
        throw NotPsd("matrix is not symmetric");
    }
    Md Ms = 0.5 * (M + Md(M.transpose()));
    Eigen::SelfAdjointEigenSolver<Md> es(Ms);
    if (es.info() != Eigen::Success) throw NotPsd("eigendecomposition failed");
    const Vd ev = es.eigenvalues();
    const double lmax = ev.maxCoeff();
    const double lmin = ev.minCoeff();
    const double mag = std::max({std::abs(lmax), std::abs(lmin), 1e-300});
    if (lmin < -1e-9 * mag) throw NotPsd("matrix has a negative eigenvalue");
    out.lambda_max = std::max(lmax, 0.0);
    const double cut = cutoff * out.lambda_max;
    Vd inv_sqrt(n);
    int kdim = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (ev(i) <= cut) {
            inv_sqrt(i) = 0.0;
            ++kdim;
        } else {
            inv_sqrt(i) = 1.0 / std::sqrt(ev(i));
        }
    }
    out.half_pinv = es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose();
    out.kernel = Md(n, kdim);
    int at = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (inv_sqrt(i) == 0.0) out.kernel.col(at++) = es.eigenvectors().col(i);
    }
    return out;
}

// ||fe.half_pinv * Delta * ff.half_pinv||, or +infinity when Delta leaks out
// of either kernel by more than 1e-8 * ||Delta||.
double measure_delta(const Md& Delta, const SymFactor& fe, const SymFactor& ff,
                     double delta_norm, double noise_floor) {
    if (delta_norm == 0.0) return 0.0;
    if (fe.kernel.cols() > 0) {
        const double res = spectral_norm(Md(fe.kernel.transpose() * Delta));
        if (res > 1e-8 * delta_norm + noise_floor) return kInf;
    }
    if (ff.kernel.cols() > 0) {
        const double res = spectral_norm(Md(Delta * ff.kernel));
        if (res > 1e-8 * delta_norm + noise_floor) return kInf;
    }
    return spectral_norm(Md(fe.half_pinv * Delta * ff.half_pinv));
}

// Two floating-point evaluation orders of the same product differ by roughly
// machine epsilon times the operand scale; a difference that small must not
// trip the kernel-containment test, whatever its direction.
double kernel_noise_floor(const Md& At, const Md& A) {
    return 1e-13 * std::max({1.0, spectral_norm(A), spectral_norm(At)});
}

bool psd_check(const Md& M) {
    if (M.rows() == 0) return true;
    Md Ms = 0.5 * (M + Md(M.transpose()));
    Eigen::SelfAdjointEigenSolver<Md> es(Ms);
    const double lmax = es.eigenvalues().maxCoeff();
    const double lmin = es.eigenvalues().minCoeff();
    const double mag = std::max({std::abs(lmax), std::abs(lmin), 1e-300});
    return lmin >= -1e-9 * mag;
}

Md diag_from(const Vd& d) {
    Md D = Md::Zero(d.size(), d.size());
    D.diagonal() = d;
    return D;
}

}  // namespace

int oracle_cap() {
    if (const char* s = std::getenv("SVSPARSE_ORACLE_CAP")) {
        const long v = std::strtol(s, nullptr, 10);
        if (v > 0) return static_cast<int>(v);
    }
    return 512;
}

Md adjacency(const WeightedDigraph& G) {
    Md A = Md::Zero(G.n, G.n);
    for (const Edge& e : G.edges) A(e.head, e.tail) += e.w.to_double();
    return A;
}

Md adjacency(const UndirectedGraph& G) {
    Md A = Md::Zero(G.n, G.n);
    for (const Edge& e : G.edges) {
        const double w = e.w.to_double();
        A(e.head, e.tail) += w;
        if (e.head != e.tail) A(e.tail, e.head) += w;
    }
    return A;
}

std::pair<Vd, Vd> degree_vectors(const WeightedDigraph& G) {
    const auto [din, dout] = degrees(G);
    Vd in(G.n), out(G.n);
    for (int v = 0; v < G.n; ++v) {
        in(v) = din[v].to_double();
        out(v) = dout[v].to_double();
    }
    return {in, out};
}

Vd degree_vector(const UndirectedGraph& G) {
    const auto deg = undirected_degrees(G);
    Vd d(G.n);
    for (int v = 0; v < G.n; ++v) d(v) = deg[v].to_double();
    return d;
}

Md walk_matrix(const WeightedDigraph& G) {
    Md A = adjacency(G);
    const Vd dout = degree_vectors(G).second;
    for (int v = 0; v < G.n; ++v) {
        if (dout(v) > 0.0) A.col(v) /= dout(v);
    }
    return A;
}

Md normalized_adjacency(const WeightedDigraph& G) {
    Md A = adjacency(G);
    const auto [din, dout] = degree_vectors(G);
    for (int v = 0; v < G.n; ++v) {
        const double s = din(v) > 0.0 ? 1.0 / std::sqrt(din(v)) : 0.0;
        A.row(v) *= s;
    }
    for (int v = 0; v < G.n; ++v) {
        const double s = dout(v) > 0.0 ? 1.0 / std::sqrt(dout(v)) : 0.0;
        A.col(v) *= s;
    }
    return A;
}

Md normalized_adjacency(const UndirectedGraph& G) {
    Md A = adjacency(G);
    const Vd d = degree_vector(G);
    for (int v = 0; v < G.n; ++v) {
        const double s = d(v) > 0.0 ? 1.0 / std::sqrt(d(v)) : 0.0;
        A.row(v) *= s;
        A.col(v) *= s;
    }
    return A;
}

double spectral_norm(const Md& M) {
    if (M.rows() == 0 || M.cols() == 0) return 0.0;
    Eigen::BDCSVD<Md> svd(M);
    return svd.singularValues()(0);
}

Md matrix_power(Md M, long k) {
    if (k < 0) throw std::invalid_argument("matrix_power: negative exponent");
    Md R = Md::Identity(M.rows(), M.cols());
    while (k > 0) {
        if (k & 1) R = Md(R * M);
        M = Md(M * M);
        k >>= 1;
    }
    return R;
}

Md psd_pinv_sqrt(const Md& M, double cutoff) {
    return sym_factor(M, cutoff).half_pinv;
}

Md psd_pinv(const Md& M, double cutoff) {
    const Md H = sym_factor(M, cutoff).half_pinv;
    return H * H;
}

SvDefinedReport check_sv_defined(const Md& A, const Md& Din, const Md& Dout) {
    const auto n = A.rows();
    if (A.cols() != n || Din.rows() != n || Dout.rows() != n) {
        throw std::invalid_argument("check_sv_defined: dimension mismatch");
    }
    SvDefinedReport rep;
    const double anorm = std::max(spectral_norm(A), 1e-300);
    const double din_max = std::max(Din.diagonal().maxCoeff(), 0.0);
    const double dout_max = std::max(Dout.diagonal().maxCoeff(), 0.0);
    rep.kernel_in_ok = true;
    rep.kernel_out_ok = true;
    for (Eigen::Index v = 0; v < n; ++v) {
        if (Din(v, v) <= 1e-12 * din_max && A.row(v).norm() > 1e-9 * anorm) {
            rep.kernel_in_ok = false;
        }
        if (Dout(v, v) <= 1e-12 * dout_max && A.col(v).norm() > 1e-9 * anorm) {
            rep.kernel_out_ok = false;
        }
    }
    const Md N = psd_pinv_sqrt(Din) * A * psd_pinv_sqrt(Dout);
    rep.sigma_max = spectral_norm(N);
    rep.sigma_ok = rep.sigma_max <= 1.0 + 1e-9;
    const Md E = Din - A * psd_pinv(Dout) * A.transpose();
    const Md F = Dout - Md(A.transpose()) * psd_pinv(Din) * A;
    rep.e_psd = psd_check(E);
    rep.f_psd = psd_check(F);
    Md B = Md::Zero(2 * n, 2 * n);
    B.topLeftCorner(n, n) = Din;
    B.topRightCorner(n, n) = A;
    B.bottomLeftCorner(n, n) = A.transpose();
    B.bottomRightCorner(n, n) = Dout;
    rep.block_psd = psd_check(B);
    return rep;
}

double measure_matrix_approx(const Md& At, const Md& A, const Md& E, const Md& F) {
    if (At.rows() != A.rows() || At.cols() != A.cols()) {
        throw std::invalid_argument("measure_matrix_approx: shape mismatch");
    }
    const Md Delta = At - A;
    const double dn = spectral_norm(Delta);
    if (dn == 0.0) return 0.0;
    const SymFactor fe = sym_factor(E, 1e-9);
    const SymFactor ff = sym_factor(F, 1e-9);
    return measure_delta(Delta, fe, ff, dn, kernel_noise_floor(At, A));
}

ApproxReport measure_sv_eps(const Md& At, const Md& A, const Md& Din, const Md& Dout) {
    ApproxReport rep;
    rep.notion = "sv";
    const Md E = Din - A * psd_pinv(Dout) * A.transpose();
    const Md F = Dout - Md(A.transpose()) * psd_pinv(Din) * A;
    const Md Delta = At - A;
    const double dn = spectral_norm(Delta);
    if (dn == 0.0) {
        rep.epsilon = 0.0;
        return rep;
    }
    const SymFactor fe = sym_factor(E, 1e-9);
    const SymFactor ff = sym_factor(F, 1e-9);
    const double inner = measure_delta(Delta, fe, ff, dn, kernel_noise_floor(At, A));
    if (!std::isfinite(inner)) {
        rep.epsilon = kInf;
        rep.kernel_ok = false;
        rep.details = "difference leaves the kernel of E or F";
        return rep;
    }
    rep.epsilon = 2.0 * inner;
    Eigen::BDCSVD<Md> svd(Md(fe.half_pinv * Delta * ff.half_pinv),
                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues().size() > 0 && svd.singularValues()(0) > 0.0) {
        Vd x = fe.half_pinv * svd.matrixU().col(0);
        Vd y = ff.half_pinv * svd.matrixV().col(0);
        if (x.norm() > 0.0) x.normalize();
        if (y.norm() > 0.0) y.normalize();
        rep.witness = std::make_pair(x, y);
    }
    return rep;
}

ApproxReport measure_sv_eps(const WeightedDigraph& Gt, const WeightedDigraph& G) {
    if (Gt.n != G.n) throw std::invalid_argument("measure_sv_eps: vertex counts differ");
    const auto [din, dout] = degree_vectors(G);
    return measure_sv_eps(adjacency(Gt), adjacency(G), diag_from(din), diag_from(dout));
}

ApproxReport measure_svn_eps(const Md& Nt, const Md& N) {
    ApproxReport rep =
        measure_sv_eps(Nt, N, Md::Identity(N.rows(), N.rows()), Md::Identity(N.rows(), N.rows()));
    rep.notion = "sv-normalized";
    return rep;
}

double measure_std_eps(const Md& At, const Md& A, const Md& D) {
    const Md E = D - 0.5 * (A + Md(A.transpose()));
    SymFactor fe;
    try {
        fe = sym_factor(E, 1e-9);
    } catch (const NotPsd&) {
        throw NotDefined("standard error undefined: D - sym(A) is not positive semidefinite");
    }
    const Md Delta = At - A;
    const double dn = spectral_norm(Delta);
    if (dn == 0.0) return 0.0;
    return measure_delta(Delta, fe, fe, dn, kernel_noise_floor(At, A));
}

ApproxReport measure_uc_eps(const Md& At, const Md& A, const Md& D, int z_grid_size) {
    if (z_grid_size < 8) throw std::invalid_argument("measure_uc_eps: grid too small");
    ApproxReport rep;
    rep.notion = "uc";
    rep.grid_points = z_grid_size;
    const auto n = A.rows();
    const Md S = 0.5 * (A + Md(A.transpose()));
    const Md K = 0.5 * (A - Md(A.transpose()));
    const Md Delta = At - A;
    const double dn = spectral_norm(Delta);
    if (dn == 0.0) {
        rep.epsilon = 0.0;
        return rep;
    }

    // Standard error of (z*At, z*A) at z = exp(i*theta). The Hermitian form
    // D - z S - conj(z) S^T splits into real and imaginary parts embedded as
    // [[X, -Y], [Y, X]]; the embedding preserves singular values.
    const auto eval = [&](double theta) -> double {
        const double c = std::cos(theta), s = std::sin(theta);
        Md E2 = Md::Zero(2 * n, 2 * n);
        const Md X = D - c * S;
        const Md Y = -s * K;
        E2.topLeftCorner(n, n) = X;
        E2.topRightCorner(n, n) = -Y;
        E2.bottomLeftCorner(n, n) = Y;
        E2.bottomRightCorner(n, n) = X;
        Md D2 = Md::Zero(2 * n, 2 * n);
        D2.topLeftCorner(n, n) = c * Delta;
        D2.topRightCorner(n, n) = -s * Delta;
        D2.bottomLeftCorner(n, n) = s * Delta;
        D2.bottomRightCorner(n, n) = c * Delta;
        SymFactor fe;
        try {
            fe = sym_factor(E2, 1e-9);
        } catch (const NotPsd&) {
            throw NotDefined("uniform-cover error undefined: form not PSD on the unit circle");
        }
        return measure_delta(D2, fe, fe, dn, kernel_noise_floor(At, A));
    };

    std::vector<double> vals(z_grid_size);
    bool any_inf = false;
    for (int k = 0; k < z_grid_size; ++k) {
        vals[k] = eval(2.0 * M_PI * k / z_grid_size);
        if (!std::isfinite(vals[k])) any_inf = true;
    }
    if (any_inf) {
        rep.epsilon = kInf;
        rep.kernel_ok = false;
        rep.details = "difference leaves the kernel at some unit-modulus z";
        return rep;
    }

    // Golden-section refinement of each strict local maximum; a flat profile
    // has none, in which case only the arc around the best grid point is
    // refined.
    std::vector<int> peaks;
    for (int k = 0; k < z_grid_size; ++k) {
        const double prev = vals[(k + z_grid_size - 1) % z_grid_size];
        const double next = vals[(k + 1) % z_grid_size];
        if (vals[k] >= prev && vals[k] >= next && (vals[k] > prev || vals[k] > next)) {
            peaks.push_back(k);
        }
    }
    if (peaks.empty()) {
        peaks.push_back(static_cast<int>(
            std::max_element(vals.begin(), vals.end()) - vals.begin()));
    }
    double best = *std::max_element(vals.begin(), vals.end());
    double gap = 0.0;
    const double h = 2.0 * M_PI / z_grid_size;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int k : peaks) {
        double a = h * k - h, b = h * k + h;
        double c = b - phi * (b - a), d = a + phi * (b - a);
        double fc = eval(c), fd = eval(d);
        for (int it = 0; it < 48; ++it) {
            if (fc > fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - phi * (b - a);
                fc = eval(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + phi * (b - a);
                fd = eval(d);
            }
            best = std::max({best, fc, fd});
        }
        gap = std::max(gap, std::abs(fc - fd));
    }
    rep.epsilon = best;
    rep.grid_gap = gap;
    return rep;
}

double second_normalized_singular(const EulerianView& G) {
    const int n = G.graph->n;
    for (int v = 0; v < n; ++v) {
        if (G.degree[v].is_zero()) throw NotDefined("isolated vertex has no normalization");
    }
    Md N = adjacency(*G.graph);
    for (int v = 0; v < n; ++v) {
        const double s = 1.0 / std::sqrt(G.degree[v].to_double());
        N.row(v) *= s;
        N.col(v) *= s;
    }
    if (n < 2) return 0.0;
    Eigen::BDCSVD<Md> svd(N);
    return svd.singularValues()(1);
}

double second_normalized_singular(const WeightedDigraph& G) {
    const EulerianCheck chk = validate_eulerian(G);
    if (!chk.ok()) {
        throw NotDefined("second_normalized_singular requires matching in/out degrees");
    }
    return second_normalized_singular(*chk.view);
}

}  // namespace svsparse
