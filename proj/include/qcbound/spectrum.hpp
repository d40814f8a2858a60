#pragma once

#include <Eigen/Dense>
#include <vector>

namespace qcb {

class Graph;

/// Eigenvalues of a symmetric matrix grouped into clusters.
struct SpectrumSummary {
    std::vector<double> eigenvalues;   ///< cluster representatives, ascending
    std::vector<int> multiplicities;   ///< same length as eigenvalues
    double smallest() const { return eigenvalues.front(); }
    double largest() const { return eigenvalues.back(); }
};

/// Shared dense symmetric eigensolver (ascending eigenvalues).
struct EigenDecomposition {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors; // column k pairs with values[k]
};
EigenDecomposition sym_eig(const Eigen::MatrixXd& m);

Eigen::MatrixXd adjacency_matrix(const Graph& g);

/// Adjacency spectrum with eigenvalues clustered at the given tolerance.
/// Guarded by an explicit order budget (<= 512 vertices).
SpectrumSummary adjacency_spectrum(const Graph& g, double cluster_tol = 1e-8);

SpectrumSummary cluster_eigenvalues(const Eigen::VectorXd& values, double cluster_tol);

} // namespace qcb
