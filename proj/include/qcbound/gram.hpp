#pragma once

#include <Eigen/Dense>

#include <array>

namespace qcb {

class Graph;

/// Exact certificate for the closed-form Gram matrix of the 57-vertex
/// construction.
///
/// The Gram matrix is I + A/3 where A is the adjacency matrix of the
/// 57-vertex distance-regular graph.  Its positive semidefiniteness is
/// certified in integer arithmetic: the adjacency matrix satisfies a quartic
/// polynomial identity whose roots are 6, (3 +- sqrt 5)/2 and -3, and the
/// eigenvalue multiplicities follow from an integer linear system, so
/// I + A/3 annihilates exactly the (-3)-eigenspace and is nonnegative on the
/// rest.  After rescaling to unit trace the matrix is feasible for the
/// complement graph's semidefinite program with objective value exactly 3.
struct GramCertificate {
    int n = 0;
    Eigen::MatrixXd gram;                ///< unit-diagonal matrix I + A/3
    double objective = 0.0;              ///< entry sum over trace (exactly 3)
    int rank = 0;                        ///< n minus the nullity of the Gram matrix
    std::array<long long, 5> min_poly{}; ///< monic quartic coefficients, x^4 first
    std::array<int, 4> multiplicities{}; ///< for eigenvalues 6, (3+s5)/2, (3-s5)/2, -3
    bool exact = false;                  ///< every integer identity verified
};

/// Build and verify the certificate from the stored 57-vertex graph.
/// Throws DecompositionError if any exact check fails.
GramCertificate perkel_gram_certificate();

/// Ratio-bound Gram matrix I + A/tau for a regular graph whose least
/// adjacency eigenvalue is -tau.  The matrix vanishes on non-adjacent pairs,
/// so after unit-trace rescaling it is feasible for the complement graph's
/// primal program with objective 1 + k/tau.
Eigen::MatrixXd hoffman_gram(const Graph& g, double* objective = nullptr);

} // namespace qcb
