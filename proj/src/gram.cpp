#include "qcbound/gram.hpp"

#include <deque>
#include <stdexcept>
#include <vector>

#include "qcbound/errors.hpp"
#include "qcbound/graph.hpp"
#include "qcbound/spectrum.hpp"

namespace qcb {

namespace {

using IMat = std::vector<long long>; // row-major n*n

IMat imat_mul(const IMat& a, const IMat& b, int n) {
    IMat c(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const long long aik = a[static_cast<std::size_t>(i) * n + k];
            if (aik == 0) continue;
            const long long* brow = b.data() + static_cast<std::size_t>(k) * n;
            long long* crow = c.data() + static_cast<std::size_t>(i) * n;
            for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    return c;
}

bool is_connected(const Graph& g) {
    const int n = g.vertex_count();
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::deque<int> q{0};
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int u : g.neighbors(v))
            if (!seen[u]) {
                seen[u] = 1;
                ++count;
                q.push_back(u);
            }
    }
    return count == n;
}

} // namespace

GramCertificate perkel_gram_certificate() {
    const Graph g = named_graph("perkel");
    const int n = g.vertex_count();

    IMat A(static_cast<std::size_t>(n) * n, 0);
    for (auto [u, v] : g.edges()) {
        A[static_cast<std::size_t>(u) * n + v] = 1;
        A[static_cast<std::size_t>(v) * n + u] = 1;
    }
    const IMat A2 = imat_mul(A, A, n);
    const IMat A3 = imat_mul(A2, A, n);
    const IMat A4 = imat_mul(A3, A, n);

    // Quartic identity A^4 - 6 A^3 - 8 A^2 + 51 A - 18 I = 0, checked in
    // exact integer arithmetic.  Its roots are 6, (3 +- sqrt 5)/2 and -3.
    GramCertificate cert;
    cert.n = n;
    cert.min_poly = {1, -6, -8, 51, -18};
    for (std::size_t idx = 0; idx < A.size(); ++idx) {
        const long long diag = (idx % (n + 1) == 0) ? 1 : 0;
        const long long val = A4[idx] - 6 * A3[idx] - 8 * A2[idx] + 51 * A[idx] - 18 * diag;
        if (val != 0)
            throw DecompositionError("quartic identity failed for the 57-vertex adjacency matrix");
    }

    // A connected regular graph has a simple largest eigenvalue, so the
    // eigenvalue 6 has multiplicity one.
    if (!is_connected(g))
        throw DecompositionError("57-vertex graph unexpectedly disconnected");

    // Multiplicities from integer identities.  Write m for the shared
    // multiplicity of (3 +- sqrt 5)/2 (equal because trace A = 0 forces the
    // irrational parts to cancel) and m3 for the multiplicity of -3:
    //   trace A   = 0:    6 + 3 m - 3 m3          = 0  ->  m3 = m + 2
    //   trace A^2 = 2|E|: 36 + 7 m + 9 (m + 2)    = 2|E|
    long long tr_a2 = 0;
    for (int i = 0; i < n; ++i) tr_a2 += A2[static_cast<std::size_t>(i) * n + i];
    const long long numerator = tr_a2 - 54;
    if (numerator % 16 != 0)
        throw DecompositionError("eigenvalue multiplicities are not integers");
    const int m = static_cast<int>(numerator / 16);
    const int m3 = m + 2;
    if (1 + 2 * m + m3 != n)
        throw DecompositionError("eigenvalue multiplicities do not sum to the graph order");
    cert.multiplicities = {1, m, m, m3};
    cert.rank = n - m3; // I + A/3 annihilates exactly the (-3)-eigenspace

    // Objective of the unit-trace rescale, in exact integers:
    //   sum(3B) = 3n + 2|E|, trace(3B) = 3n, value = (3n + 2|E|) / (3n).
    const long long sum3 = 3LL * n + 2LL * g.edge_count();
    const long long trace3 = 3LL * n;
    if (sum3 % trace3 != 0)
        throw DecompositionError("objective of the closed-form Gram matrix is not an integer");
    cert.objective = static_cast<double>(sum3 / trace3);

    cert.gram = Eigen::MatrixXd::Identity(n, n) + adjacency_matrix(g) / 3.0;
    cert.exact = true;
    return cert;
}

Eigen::MatrixXd hoffman_gram(const Graph& g, double* objective) {
    if (!g.is_regular() || g.edge_count() == 0)
        throw std::invalid_argument("hoffman_gram requires a regular graph with at least one edge");
    const double tau = -adjacency_spectrum(g).smallest();
    if (!(tau > 0))
        throw DecompositionError("least adjacency eigenvalue is not negative");
    const int n = g.vertex_count();
    if (objective) *objective = 1.0 + g.degree(0) / tau;
    return Eigen::MatrixXd::Identity(n, n) + adjacency_matrix(g) / tau;
}

} // namespace qcb
