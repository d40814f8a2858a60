#include "qcbound/rays.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qcbound/errors.hpp"

namespace qcb {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

/// Diagonally pivoted Cholesky: at each step take the row with the largest
/// remaining diagonal residual, stop when all residuals fall below the rank
/// cutoff.  Deterministic (ties resolve to the lowest index) and numerically
/// robust; used both to determine the numerical rank and as the fallback
/// factorization when the leading principal block is singular.
MatrixXd pivoted_factor(const MatrixXd& B, double cut, int* rank_out) {
    const int n = static_cast<int>(B.rows());
    MatrixXd R = MatrixXd::Zero(n, n);
    VectorXd resid = B.diagonal();
    std::vector<char> pivoted(n, 0);
    int d = 0;
    for (; d < n; ++d) {
        int p = -1;
        double best = cut;
        for (int i = 0; i < n; ++i)
            if (!pivoted[i] && resid(i) > best) {
                best = resid(i);
                p = i;
            }
        if (p < 0) break;
        pivoted[p] = 1;
        const double rpp = std::sqrt(resid(p));
        R(p, d) = rpp;
        resid(p) = 0.0;
        for (int i = 0; i < n; ++i) {
            if (pivoted[i]) continue;
            double dot = 0.0;
            for (int j = 0; j < d; ++j) dot += R(i, j) * R(p, j);
            const double rid = (B(i, p) - dot) / rpp;
            R(i, d) = rid;
            resid(i) -= rid * rid;
        }
    }
    *rank_out = d;
    return R.leftCols(std::max(d, 1));
}

/// Factor through the leading principal d-by-d block: the first d rows are
/// its lower Cholesky factor and every later row is obtained by a triangular
/// solve against the first d columns.  Keeps the row indexing of the input,
/// so downstream constructions that complete the first rows to a full basis
/// are reproducible.  Returns an empty matrix when the block is singular.
MatrixXd leading_block_factor(const MatrixXd& B, int d) {
    Eigen::LLT<MatrixXd> llt(B.topLeftCorner(d, d));
    if (llt.info() != Eigen::Success) return MatrixXd();
    const int n = static_cast<int>(B.rows());
    MatrixXd R(n, d);
    R.topRows(d) = MatrixXd(llt.matrixL());
    if (n > d) {
        // L x_j = B(0:d, j) for each trailing row j.
        MatrixXd tail = B.topRows(d).rightCols(n - d);
        llt.matrixL().solveInPlace(tail);
        R.bottomRows(n - d) = tail.transpose();
    }
    return R;
}

} // namespace

RayFamily extract_rays(const Eigen::MatrixXd& gram, const RayExtractionOptions& opts) {
    if (gram.rows() == 0 || gram.rows() != gram.cols())
        throw std::invalid_argument("extract_rays requires a nonempty square matrix");
    const int n = static_cast<int>(gram.rows());
    const MatrixXd B = 0.5 * (gram + gram.transpose());
    const double scale = B.diagonal().maxCoeff();
    if (!(scale > 0.0))
        throw std::invalid_argument("extract_rays requires a positive diagonal entry");
    const double cut = opts.rank_tolerance * scale;
    const double recon_tol = opts.reconstruction_tolerance * std::max(1.0, scale);

    int d = 0;
    const MatrixXd pivoted = pivoted_factor(B, cut, &d);
    if (d == 0)
        throw DecompositionError("Gram matrix has numerical rank zero");

    // Prefer the leading-block frame (it keeps row order and fixes the
    // orientation of the realization); fall back to the pivoted factor when
    // the leading block does not carry the full rank.
    MatrixXd Rd = leading_block_factor(B, d);
    double recon = recon_tol + 1.0;
    if (Rd.size() > 0 && Rd.allFinite())
        recon = (B - Rd * Rd.transpose()).cwiseAbs().maxCoeff();
    if (!(recon <= recon_tol)) {
        Rd = pivoted;
        recon = (B - Rd * Rd.transpose()).cwiseAbs().maxCoeff();
        if (!(recon <= recon_tol))
            throw DecompositionError("factorization failed to reproduce the Gram matrix");
    }

    RayFamily fam;
    fam.dimension = d;
    fam.reconstruction_error = recon;
    fam.rays.resize(n, d);
    for (int i = 0; i < n; ++i) {
        const double norm = Rd.row(i).norm();
        if (!(norm > 0.0))
            throw DecompositionError("a Gram row factored to the zero vector");
        fam.rays.row(i) = Rd.row(i) / norm;
    }

    VectorXd sum = fam.rays.colwise().sum().transpose();
    const double sum_norm = sum.norm();
    if (sum_norm > 1e-12) {
        fam.handle = sum / sum_norm;
        fam.handle_overlaps = (fam.rays * fam.handle).array().square();
    } else {
        fam.handle = VectorXd::Zero(d);
        fam.handle_overlaps = VectorXd::Zero(n);
    }
    return fam;
}

} // namespace qcb
