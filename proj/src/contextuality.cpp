#include "qcbound/contextuality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qcbound/graph.hpp"

namespace qcb {

std::string to_string(CertifyStatus s) {
    switch (s) {
    case CertifyStatus::pass: return "PASS";
    case CertifyStatus::fail: return "FAIL";
    case CertifyStatus::inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

ParadoxCertificate certify_paradox(const Graph& exclusivity, int n_contexts,
                                   const ThetaOptions& theta_opts, SearchBudget budget) {
    if (n_contexts < 3)
        throw std::invalid_argument(
            "no paradox exists with fewer than three contexts: independence number "
            "n-1 = 1 forces a complete graph, whose Lovasz number is 1, not 2");

    ParadoxCertificate cert;
    cert.n_contexts = n_contexts;

    cert.independence_number = independence_number(exclusivity, budget);
    cert.alpha_ok = cert.independence_number == n_contexts - 1;

    const Graph co = exclusivity.complement();
    ChromaticResult cover = chromatic_number(co, n_contexts, budget);
    cert.cover_exceeds_limit = cover.exceeds_limit;
    cert.clique_cover_number = cover.value;
    cert.cover_ok = !cover.exceeds_limit && cover.value == n_contexts;
    if (cert.cover_ok) {
        cert.contexts.assign(n_contexts, {});
        for (int v = 0; v < exclusivity.vertex_count(); ++v)
            cert.contexts[cover.coloring[v]].push_back(v);
        std::sort(cert.contexts.begin(), cert.contexts.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
    }

    cert.theta = lovasz_theta(exclusivity, theta_opts);
    const double n = static_cast<double>(n_contexts);
    const double tol = 2.0 * std::max(cert.theta.gap, theta_opts.target_gap);
    cert.theta_ok = cert.theta.primal_value >= n - tol && cert.theta.dual_value <= n + tol;
    cert.theta_definitive_fail =
        cert.theta.dual_value < n - tol || cert.theta.primal_value > n + tol;

    if (!cert.alpha_ok || !cert.cover_ok || cert.theta_definitive_fail)
        cert.status = CertifyStatus::fail;
    else if (cert.theta_ok)
        cert.status = CertifyStatus::pass;
    else
        cert.status = CertifyStatus::inconclusive;
    return cert;
}

std::vector<int> ContextCover::sizes() const {
    std::vector<int> out;
    out.reserve(contexts.size());
    for (const auto& c : contexts) out.push_back(static_cast<int>(c.size()));
    return out;
}

int ContextCover::total() const {
    int t = 0;
    for (const auto& c : contexts) t += static_cast<int>(c.size());
    return t;
}

int ContextCover::flat_index(int j, int k) const {
    if (j < 0 || j >= static_cast<int>(contexts.size()) || k < 0 ||
        k >= static_cast<int>(contexts[j].size()))
        throw std::out_of_range("context cover index out of range");
    int base = 0;
    for (int i = 0; i < j; ++i) base += static_cast<int>(contexts[i].size());
    return base + k;
}

int ContextCover::vertex(int j, int k) const {
    if (j < 0 || j >= static_cast<int>(contexts.size()) || k < 0 ||
        k >= static_cast<int>(contexts[j].size()))
        throw std::out_of_range("context cover index out of range");
    return contexts[j][k];
}

ContextCover context_cover(const Graph& exclusivity, int n, SearchBudget budget) {
    if (n < 1) throw std::invalid_argument("context_cover requires n >= 1");
    const Graph co = exclusivity.complement();
    ChromaticResult col = chromatic_number(co, n, budget);
    if (col.exceeds_limit)
        throw std::invalid_argument(
            "exclusivity graph admits no cover by " + std::to_string(n) +
            " contexts: the complement needs more than " + std::to_string(n) + " colors");
    ContextCover cover;
    cover.contexts.assign(col.value, {});
    for (int v = 0; v < exclusivity.vertex_count(); ++v)
        cover.contexts[col.coloring[v]].push_back(v);
    std::sort(cover.contexts.begin(), cover.contexts.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return cover;
}

DefectMatrix::DefectMatrix(const Graph& exclusivity)
    : n_(exclusivity.vertex_count()), edges_(exclusivity.edges()) {
    adjacency_.assign(static_cast<std::size_t>(n_) * n_, 0);
    for (auto [u, v] : edges_) {
        adjacency_[static_cast<std::size_t>(u) * n_ + v] = 1;
        adjacency_[static_cast<std::size_t>(v) * n_ + u] = 1;
    }
}

void DefectMatrix::set(int prepared, int measured, double eps) {
    if (prepared < 0 || measured < 0 || prepared >= n_ || measured >= n_)
        throw std::invalid_argument("defect index out of range");
    if (!adjacency_[static_cast<std::size_t>(prepared) * n_ + measured])
        throw std::invalid_argument("defects are defined only on exclusive pairs");
    if (!(eps >= 0.0 && eps <= 1.0))
        throw std::invalid_argument("defect values must lie in [0, 1]");
    values_[{prepared, measured}] = eps;
}

std::optional<double> DefectMatrix::get(int prepared, int measured) const {
    auto it = values_.find({prepared, measured});
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

double DefectMatrix::mean() const {
    if (values_.empty()) return 0.0;
    double s = 0.0;
    for (const auto& [k, v] : values_) s += v;
    return s / static_cast<double>(values_.size());
}

double DefectMatrix::max() const {
    double m = 0.0;
    for (const auto& [k, v] : values_) m = std::max(m, v);
    return m;
}

double exclusive_pair_compensation(const DefectMatrix& defects,
                                   const std::vector<double>& probabilities) {
    if (static_cast<int>(probabilities.size()) != defects.vertex_count())
        throw std::invalid_argument("probability vector does not match the defect graph");
    double total = 0.0;
    for (auto [u, v] : defects.edges()) {
        const double fwd = defects.get(u, v).value_or(0.0);
        const double bwd = defects.get(v, u).value_or(0.0);
        total += 0.5 * (probabilities[u] * fwd + probabilities[v] * bwd);
    }
    return total;
}

double csw_lhs(const std::vector<double>& probabilities, const DefectMatrix& defects) {
    const double psum = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
    return psum - exclusive_pair_compensation(defects, probabilities);
}

double corrected_classical_bound(const DefectMatrix& defects,
                                 const std::vector<double>& probabilities, SearchBudget budget) {
    // Rebuild the exclusivity graph from the stored edge set to compute its
    // independence number exactly.
    Graph g(defects.vertex_count());
    for (auto [u, v] : defects.edges()) g.add_edge(u, v);
    const int alpha = independence_number(g, budget);
    return static_cast<double>(alpha) + exclusive_pair_compensation(defects, probabilities);
}

ParadoxReport evaluate_paradox(const ContextCover& cover,
                               const std::vector<double>& probabilities,
                               const DefectMatrix& defects, double quantum_bound,
                               const VerdictThresholds& thresholds, SearchBudget budget) {
    if (cover.total() != static_cast<int>(probabilities.size()) ||
        cover.total() != defects.vertex_count())
        throw std::invalid_argument("cover, probabilities and defects index different event sets");

    ParadoxReport rep;
    rep.context_sums.reserve(cover.contexts.size());
    for (const auto& ctx : cover.contexts) {
        double s = 0.0;
        for (int v : ctx) s += probabilities[v];
        rep.context_sums.push_back(s);
    }
    rep.context_sum_stderr.assign(cover.contexts.size(), 0.0);
    rep.probability_sum =
        std::accumulate(rep.context_sums.begin(), rep.context_sums.end(), 0.0);
    rep.defect_term = exclusive_pair_compensation(defects, probabilities);
    rep.inequality_lhs = rep.probability_sum - rep.defect_term;

    Graph g(defects.vertex_count());
    for (auto [u, v] : defects.edges()) g.add_edge(u, v);
    rep.classical_bound = static_cast<double>(independence_number(g, budget));
    rep.corrected_bound = rep.classical_bound + rep.defect_term;
    rep.quantum_bound = quantum_bound;
    rep.margin = rep.probability_sum - rep.corrected_bound;
    rep.mean_defect = defects.mean();
    apply_verdicts(rep, thresholds);
    return rep;
}

void apply_verdicts(ParadoxReport& report, const VerdictThresholds& thresholds) {
    report.margin = report.probability_sum - report.corrected_bound;
    report.sigma_level =
        report.margin_stderr > 0.0 ? report.margin / report.margin_stderr : 0.0;
    report.quantum_agreement = !report.context_sums.empty();
    for (double p : report.context_sums)
        if (p < thresholds.min_context_probability) report.quantum_agreement = false;
    if (report.margin_stderr > 0.0)
        report.classical_refuted =
            report.margin > thresholds.refutation_sigma * report.margin_stderr;
    else
        report.classical_refuted = report.margin > 0.0;
}

} // namespace qcb
