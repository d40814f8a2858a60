#pragma once

#include <Eigen/Dense>

namespace qcb {

class Graph;

/// Tuning knobs for the semidefinite bound solver.
struct ThetaOptions {
    int max_iterations = 50000;        ///< splitting-method iteration cap
    int dual_iterations = 4000;        ///< dual polish iteration cap
    double target_gap = 1e-5;          ///< stop once dual - primal <= target_gap
    double time_limit_seconds = 240.0; ///< wall-clock budget for the whole solve
};

/// Two-sided certificate for the Lovasz number of a graph.
///
/// `primal_matrix` is feasible for the primal program (unit trace, zero on
/// edges, positive semidefinite up to the reported eigenvalue floor), so the
/// sum of its entries is a rigorous lower bound.  `dual_matrix` has every
/// diagonal and non-edge entry exactly one, so its largest eigenvalue is a
/// rigorous upper bound.  The two values sandwich the Lovasz number
/// regardless of whether the iteration converged.
struct ThetaCertificate {
    int n = 0;
    double primal_value = 0.0; ///< certified lower bound
    double dual_value = 0.0;   ///< certified upper bound
    double gap = 0.0;          ///< dual_value - primal_value
    bool converged = false;    ///< gap <= requested target
    int iterations = 0;        ///< splitting-method iterations used
    Eigen::MatrixXd primal_matrix;
    Eigen::MatrixXd dual_matrix;
    double primal_min_eigenvalue = 0.0; ///< smallest eigenvalue of primal_matrix
    double primal_trace_error = 0.0;    ///< |trace - 1|
    double primal_edge_abs_max = 0.0;   ///< largest |entry| on an edge slot
    double dual_family_abs_error = 0.0; ///< largest |entry - 1| off the edge slots
};

/// Compute a certified two-sided bound on the Lovasz number.
ThetaCertificate lovasz_theta(const Graph& g, const ThetaOptions& opts = {});

/// Independent re-check of a certificate pair against a graph.
struct CertificateCheck {
    bool primal_feasible = false;
    bool dual_feasible = false;
    double primal_value = 0.0; ///< entry sum of the primal matrix
    double dual_value = 0.0;   ///< largest eigenvalue of the dual matrix
};

CertificateCheck check_certificate(const Graph& g, const Eigen::MatrixXd& primal,
                                   const Eigen::MatrixXd& dual, double tol = 1e-8);

} // namespace qcb
