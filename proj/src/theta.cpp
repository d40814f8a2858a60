#include "qcbound/theta.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qcbound/errors.hpp"
#include "qcbound/graph.hpp"

namespace qcb {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Clock = std::chrono::steady_clock;
using EdgeList = std::vector<std::pair<int, int>>;

constexpr int kThetaOrderLimit = 512;

/// Projection onto the affine slice {X = X^T, X_uv = 0 on edges, tr X = 1}.
void affine_project(MatrixXd& X, const EdgeList& edges) {
    X = (0.5 * (X + X.transpose())).eval();
    for (auto [u, v] : edges) {
        X(u, v) = 0.0;
        X(v, u) = 0.0;
    }
    X.diagonal().array() += (1.0 - X.trace()) / static_cast<double>(X.rows());
}

/// Force the dual pattern: exact ones on the diagonal and every non-edge
/// slot; edge slots are the free parameters and stay as they are.
void family_project(MatrixXd& A, const Graph& g) {
    const int n = A.rows();
    A = (0.5 * (A + A.transpose())).eval();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i == j || !g.adjacent(i, j)) A(i, j) = 1.0;
}

double largest_eigenvalue(const MatrixXd& A) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(A, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw DecompositionError("eigendecomposition failed in the bound solver");
    return es.eigenvalues().maxCoeff();
}

struct PrimalRepair {
    MatrixXd B;
    double value = 0.0;
    double min_eig = 0.0;
};

/// Turn an approximate iterate into an exactly feasible primal matrix: zero
/// the edge slots, lift the diagonal past the most negative eigenvalue, and
/// rescale to unit trace.  The entry sum of the result is a certified lower
/// bound on the Lovasz number.
PrimalRepair repair_primal(MatrixXd M, const EdgeList& edges) {
    M = (0.5 * (M + M.transpose())).eval();
    for (auto [u, v] : edges) {
        M(u, v) = 0.0;
        M(v, u) = 0.0;
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(M, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw DecompositionError("eigendecomposition failed during primal repair");
    const double lam_min = es.eigenvalues().minCoeff();
    const double lam_max = es.eigenvalues().maxCoeff();
    const double delta = std::max(0.0, -lam_min) + 1e-12 * std::max(1.0, std::abs(lam_max));
    M.diagonal().array() += delta;
    double tr = M.trace();
    if (!(tr > 0.0)) {
        // Degenerate iterate: fall back to the single-vertex witness.
        M.setZero();
        M(0, 0) = 1.0;
        tr = 1.0;
    }
    M /= tr;
    Eigen::SelfAdjointEigenSolver<MatrixXd> check(M, Eigen::EigenvaluesOnly);
    PrimalRepair r;
    r.B = std::move(M);
    r.value = r.B.sum();
    r.min_eig = check.eigenvalues().minCoeff();
    return r;
}

/// Dual candidate built from the primal eigenspace.  At an optimum the dual
/// matrix acts as theta on the orthogonal complement of the primal range and
/// is free on the range itself, so we scan that one remaining degree of
/// freedom with a golden-section search (the objective is convex in mu).
MatrixXd polish_dual(const MatrixXd& primal, double theta_hat, const Graph& g) {
    const int n = primal.rows();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(primal);
    if (es.info() != Eigen::Success)
        throw DecompositionError("eigendecomposition failed during dual polish");
    const VectorXd& ev = es.eigenvalues();
    const double cut = std::max(1e-10, 1e-6 * std::max(0.0, ev.maxCoeff()));
    MatrixXd P0 = MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        if (ev(i) > cut) P0.noalias() += es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose();
    const MatrixXd base = theta_hat * (MatrixXd::Identity(n, n) - P0);
    auto candidate = [&](double mu) {
        MatrixXd A = base + mu * P0;
        family_project(A, g);
        return A;
    };
    auto value = [&](double mu) { return largest_eigenvalue(candidate(mu)); };
    double lo = -3.0 * n, hi = 3.0 * n;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = value(c), fd = value(d);
    for (int it = 0; it < 64; ++it) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = value(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = value(d);
        }
    }
    return candidate(0.5 * (lo + hi));
}

void audit(ThetaCertificate& cert, const Graph& g) {
    const int n = cert.n;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(cert.primal_matrix, Eigen::EigenvaluesOnly);
    cert.primal_min_eigenvalue = es.eigenvalues().minCoeff();
    cert.primal_trace_error = std::abs(cert.primal_matrix.trace() - 1.0);
    cert.primal_edge_abs_max = 0.0;
    for (auto [u, v] : g.edges())
        cert.primal_edge_abs_max = std::max(cert.primal_edge_abs_max,
                                            std::abs(cert.primal_matrix(u, v)));
    cert.dual_family_abs_error = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i == j || !g.adjacent(i, j))
                cert.dual_family_abs_error = std::max(cert.dual_family_abs_error,
                                                      std::abs(cert.dual_matrix(i, j) - 1.0));
}

} // namespace

ThetaCertificate lovasz_theta(const Graph& g, const ThetaOptions& opts) {
    const int n = g.vertex_count();
    if (n == 0)
        throw std::invalid_argument("lovasz_theta requires at least one vertex");
    if (n > kThetaOrderLimit)
        throw ResourceError("lovasz_theta: order exceeds the 512-vertex solver budget");

    const auto t0 = Clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };

    ThetaCertificate cert;
    cert.n = n;
    const EdgeList& edges = g.edges();

    if (edges.empty()) {
        cert.primal_matrix = MatrixXd::Constant(n, n, 1.0 / n);
        cert.dual_matrix = MatrixXd::Ones(n, n);
        cert.primal_value = cert.dual_value = static_cast<double>(n);
        cert.converged = true;
        audit(cert, g);
        return cert;
    }
    if (2 * static_cast<long long>(edges.size()) == static_cast<long long>(n) * (n - 1)) {
        cert.primal_matrix = MatrixXd::Zero(n, n);
        cert.primal_matrix(0, 0) = 1.0;
        cert.dual_matrix = MatrixXd::Identity(n, n);
        cert.primal_value = cert.dual_value = 1.0;
        cert.converged = true;
        audit(cert, g);
        return cert;
    }

    const MatrixXd J = MatrixXd::Ones(n, n);

    // --- phase 1: operator-splitting iteration on the primal program ------
    MatrixXd X = MatrixXd::Identity(n, n) / n;
    MatrixXd Y = X;
    MatrixXd U = MatrixXd::Zero(n, n);
    double rho = 1.0;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es;

    double best_primal = 1.0; // single-vertex witness
    MatrixXd best_primal_matrix = MatrixXd::Zero(n, n);
    best_primal_matrix(0, 0) = 1.0;
    double best_primal_min_eig = 0.0;
    double best_dual = static_cast<double>(n); // all-ones dual matrix
    MatrixXd best_dual_matrix = MatrixXd::Ones(n, n);

    auto take_primal = [&](const MatrixXd& M) {
        PrimalRepair rep = repair_primal(M, edges);
        if (rep.value > best_primal) {
            best_primal = rep.value;
            best_primal_matrix = std::move(rep.B);
            best_primal_min_eig = rep.min_eig;
        }
    };
    auto take_dual = [&](MatrixXd A) {
        family_project(A, g);
        const double v = largest_eigenvalue(A);
        if (v < best_dual) {
            best_dual = v;
            best_dual_matrix = std::move(A);
        }
    };

    const int check_every = 50;
    int it = 0;
    for (; it < opts.max_iterations; ++it) {
        if (elapsed() > 0.6 * opts.time_limit_seconds) break;
        X = Y - U + J / rho;
        affine_project(X, edges);
        MatrixXd Z = X + U;
        Z = (0.5 * (Z + Z.transpose())).eval();
        es.compute(Z);
        if (es.info() != Eigen::Success)
            throw DecompositionError("eigendecomposition failed in the bound solver");
        const VectorXd lam = es.eigenvalues().cwiseMax(0.0);
        MatrixXd Ynew = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
        const double dual_res = rho * (Ynew - Y).norm();
        Y = std::move(Ynew);
        U += X - Y;
        const double pri_res = (X - Y).norm();
        if (it % 10 == 9) {
            if (pri_res > 10.0 * dual_res) {
                rho = std::min(rho * 2.0, 1e6);
                U /= 2.0;
            } else if (dual_res > 10.0 * pri_res) {
                rho = std::max(rho / 2.0, 1e-4);
                U *= 2.0;
            }
        }
        if (it % check_every == check_every - 1) {
            take_primal(Y);
            take_dual(rho * U);
            take_dual(-rho * U);
            if (it >= 500 && (it / check_every) % 10 == 9) {
                take_dual(polish_dual(best_primal_matrix, best_primal, g));
            }
            if (best_dual - best_primal <= opts.target_gap) {
                ++it;
                break;
            }
        }
    }
    cert.iterations = it;

    // --- phase 2: polish the dual from the primal eigenspace --------------
    if (best_dual - best_primal > opts.target_gap) {
        take_primal(Y);
        take_dual(polish_dual(best_primal_matrix, best_primal, g));
        take_dual(polish_dual(best_primal_matrix, best_dual, g));
    }

    // --- phase 3: smoothed subgradient descent on the dual edge entries ---
    MatrixXd A = best_dual_matrix;
    for (int k = 0; k < opts.dual_iterations; ++k) {
        if (best_dual - best_primal <= opts.target_gap) break;
        if (elapsed() > opts.time_limit_seconds) break;
        es.compute(A);
        if (es.info() != Eigen::Success)
            throw DecompositionError("eigendecomposition failed in the bound solver");
        const VectorXd& ev = es.eigenvalues();
        const double f = ev.maxCoeff();
        if (f < best_dual) {
            best_dual = f;
            best_dual_matrix = A;
        } else if (f > best_dual + 1.0) {
            A = best_dual_matrix; // wandered off; restart from the incumbent
            continue;
        }
        // Softmax-smoothed subgradient: weight the top eigenvectors so that a
        // degenerate leading eigenvalue does not stall the descent.
        const double T = std::max(1e-9, 0.05 * std::pow(0.995, k)) * std::max(1.0, std::abs(f));
        VectorXd w = ((ev.array() - f) / T).exp();
        w /= w.sum();
        const MatrixXd M = es.eigenvectors() * w.array().sqrt().matrix().asDiagonal();
        double gnorm2 = 0.0;
        std::vector<double> grad(edges.size());
        for (std::size_t e = 0; e < edges.size(); ++e) {
            auto [u, v] = edges[e];
            grad[e] = 2.0 * M.row(u).dot(M.row(v));
            gnorm2 += grad[e] * grad[e];
        }
        if (gnorm2 < 1e-18) break;
        double step = (f - best_primal) / gnorm2; // Polyak step toward the lower bound
        step = std::min(step, 5.0 / std::sqrt(gnorm2));
        if (step <= 0.0) break;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            auto [u, v] = edges[e];
            A(u, v) -= step * grad[e];
            A(v, u) = A(u, v);
        }
    }

    cert.primal_value = best_primal;
    cert.primal_matrix = best_primal_matrix;
    cert.dual_value = best_dual;
    cert.dual_matrix = best_dual_matrix;
    cert.gap = best_dual - best_primal;
    cert.converged = cert.gap <= opts.target_gap;
    audit(cert, g);
    cert.primal_min_eigenvalue = std::min(cert.primal_min_eigenvalue, best_primal_min_eig);
    return cert;
}

CertificateCheck check_certificate(const Graph& g, const Eigen::MatrixXd& primal,
                                   const Eigen::MatrixXd& dual, double tol) {
    const int n = g.vertex_count();
    if (n == 0) throw std::invalid_argument("check_certificate requires at least one vertex");
    CertificateCheck c;
    if (primal.rows() != n || primal.cols() != n || dual.rows() != n || dual.cols() != n)
        return c;

    bool ok = (primal - primal.transpose()).cwiseAbs().maxCoeff() <= tol;
    for (auto [u, v] : g.edges())
        ok = ok && std::abs(primal(u, v)) <= tol && std::abs(primal(v, u)) <= tol;
    ok = ok && std::abs(primal.trace() - 1.0) <= tol;
    if (ok) {
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(
            (0.5 * (primal + primal.transpose())).eval(), Eigen::EigenvaluesOnly);
        ok = es.info() == Eigen::Success && es.eigenvalues().minCoeff() >= -tol;
    }
    c.primal_feasible = ok;
    c.primal_value = primal.sum();

    bool dok = (dual - dual.transpose()).cwiseAbs().maxCoeff() <= tol;
    for (int i = 0; i < n && dok; ++i)
        for (int j = 0; j < n; ++j)
            if (i == j || !g.adjacent(i, j)) dok = dok && std::abs(dual(i, j) - 1.0) <= tol;
    c.dual_feasible = dok;
    c.dual_value = largest_eigenvalue((0.5 * (dual + dual.transpose())).eval());
    return c;
}

} // namespace qcb
