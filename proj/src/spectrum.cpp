#include "qcbound/spectrum.hpp"

#include <cmath>

#include "qcbound/errors.hpp"
#include "qcbound/graph.hpp"

namespace qcb {

EigenDecomposition sym_eig(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success)
        throw DecompositionError("symmetric eigendecomposition failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

Eigen::MatrixXd adjacency_matrix(const Graph& g) {
    int n = g.vertex_count();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (auto [u, v] : g.edges()) {
        a(u, v) = 1.0;
        a(v, u) = 1.0;
    }
    return a;
}

SpectrumSummary cluster_eigenvalues(const Eigen::VectorXd& values, double cluster_tol) {
    SpectrumSummary s;
    double scale = 1.0;
    for (int i = 0; i < values.size(); ++i) scale = std::max(scale, std::abs(values[i]));
    const double tol = cluster_tol * scale;
    int i = 0;
    while (i < values.size()) {
        int j = i;
        while (j + 1 < values.size() && values[j + 1] - values[j] <= tol) ++j;
        double sum = 0.0;
        for (int k = i; k <= j; ++k) sum += values[k];
        s.eigenvalues.push_back(sum / (j - i + 1));
        s.multiplicities.push_back(j - i + 1);
        i = j + 1;
    }
    return s;
}

SpectrumSummary adjacency_spectrum(const Graph& g, double cluster_tol) {
    if (g.vertex_count() > 512)
        throw ResourceError("adjacency_spectrum: order exceeds the 512-vertex budget");
    if (g.vertex_count() == 0)
        throw std::invalid_argument("adjacency_spectrum: empty graph");
    EigenDecomposition ed = sym_eig(adjacency_matrix(g));
    return cluster_eigenvalues(ed.values, cluster_tol);
}

} // namespace qcb
