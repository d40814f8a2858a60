#pragma once

#include <Eigen/Dense>

namespace qcb {

struct RayExtractionOptions {
    /// Diagonal-residual cutoff for the rank decision, relative to the
    /// largest diagonal entry of the input.
    double rank_tolerance = 1e-7;
    /// Largest absolute entrywise error allowed between the input and the
    /// refactored Gram matrix.
    double reconstruction_tolerance = 1e-6;
};

/// Unit vectors realizing a positive semidefinite Gram matrix.
///
/// Row i of `rays` is a unit vector r_i in R^d, d the numerical rank of the
/// input, such that the matrix of inner products reproduces the (row-scaled)
/// input.  `handle` is the unit vector along the sum of all rays; its
/// squared inner products with the rays are the natural outcome
/// probabilities of the construction.
struct RayFamily {
    int dimension = 0;
    Eigen::MatrixXd rays;            ///< one unit row per Gram row, n x d
    Eigen::VectorXd handle;          ///< unit vector along the ray sum (zero if the sum vanishes)
    Eigen::VectorXd handle_overlaps; ///< squared inner products with the handle
    double reconstruction_error = 0.0; ///< max-abs deviation of the refactored Gram
};

/// Factor a Gram matrix into explicit rays via diagonally pivoted Cholesky.
/// Throws std::invalid_argument for malformed input and DecompositionError
/// when the factorization cannot reproduce the matrix to tolerance.
RayFamily extract_rays(const Eigen::MatrixXd& gram, const RayExtractionOptions& opts = {});

} // namespace qcb
