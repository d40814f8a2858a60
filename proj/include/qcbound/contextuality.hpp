#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcbound/invariants.hpp"
#include "qcbound/theta.hpp"

namespace qcb {

class Graph;

enum class CertifyStatus { pass, fail, inconclusive };

std::string to_string(CertifyStatus s);

/// Verdict on whether an exclusivity graph hosts an n-context all-or-nothing
/// paradox.  The conditions are: independence number n-1, clique cover
/// number n (the contexts), and Lovasz number n (certified by a two-sided
/// semidefinite bound).  The combinatorial conditions are decided exactly;
/// the spectral condition is decided up to the certificate gap, and an
/// unconverged certificate that still straddles n yields `inconclusive`
/// rather than a verdict.
struct ParadoxCertificate {
    CertifyStatus status = CertifyStatus::inconclusive;
    int n_contexts = 0;

    int independence_number = 0;
    bool alpha_ok = false;

    int clique_cover_number = 0; ///< meaningful only when !cover_exceeds_limit
    bool cover_exceeds_limit = false;
    bool cover_ok = false;

    ThetaCertificate theta;
    bool theta_ok = false;
    bool theta_definitive_fail = false;

    /// The n mutually exclusive contexts (cliques covering the graph),
    /// ordered by smallest member; populated when the cover has exactly n
    /// classes.
    std::vector<std::vector<int>> contexts;
};

/// Certify the paradox conditions for an exclusivity graph.  Throws
/// std::invalid_argument for n_contexts < 3: with two contexts the
/// conditions would require independence number one, i.e. a complete graph,
/// whose Lovasz number is one rather than two, so no two-context paradox
/// exists.
ParadoxCertificate certify_paradox(const Graph& exclusivity, int n_contexts,
                                   const ThetaOptions& theta_opts = {},
                                   SearchBudget budget = {});

/// Ordered partition of the event indices into mutually exclusive contexts.
/// Every group is a clique of the exclusivity graph.  Flat event indices
/// follow the concatenation convention: event k of context j sits at
/// sum of the first j group sizes, plus k.
struct ContextCover {
    std::vector<std::vector<int>> contexts;

    std::vector<int> sizes() const;
    int total() const;
    int flat_index(int j, int k) const; ///< 0-based context j, member k
    int vertex(int j, int k) const;     ///< vertex id of that member
};

/// Build the cover from an n-coloring of the complement graph (color classes
/// of the complement are cliques of the exclusivity graph).  Groups are
/// ordered by smallest member.  Throws std::invalid_argument when the
/// complement is not n-colorable, quoting the certified refusal.
ContextCover context_cover(const Graph& exclusivity, int n, SearchBudget budget = {});

/// Measured orthogonality defects on ordered exclusive pairs: entry (i, j)
/// is the probability of seeing outcome j when ray i was prepared, which
/// would be zero for perfectly exclusive events.  Entries exist only for
/// edges of the exclusivity graph; unmeasured orientations count as zero in
/// all aggregates.
class DefectMatrix {
public:
    DefectMatrix() = default; ///< empty matrix over zero events
    explicit DefectMatrix(const Graph& exclusivity);

    int vertex_count() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    /// Record a measured defect; (i, j) must be an exclusive pair and the
    /// value must lie in [0, 1].
    void set(int prepared, int measured, double eps);
    std::optional<double> get(int prepared, int measured) const;

    std::size_t count() const { return values_.size(); }
    double mean() const;
    double max() const;

    const std::map<std::pair<int, int>, double>& entries() const { return values_; }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<char> adjacency_;
    std::map<std::pair<int, int>, double> values_;
};

/// Symmetrized joint-outcome estimate summed over all exclusive pairs:
/// for each edge (i, j), half of p_i * eps(j|i) plus half of p_j * eps(i|j),
/// missing orientations contributing zero.  This is the compensation term of
/// the noise-robust witness; the symmetric form is a documented modeling
/// choice, since only the prepare-and-measure data exist.
double exclusive_pair_compensation(const DefectMatrix& defects,
                                   const std::vector<double>& probabilities);

/// Witness left-hand side: sum of event probabilities minus the pair
/// compensation.
double csw_lhs(const std::vector<double>& probabilities, const DefectMatrix& defects);

/// Classical bound inflated by the compensation: independence number of the
/// exclusivity graph plus the pair term.
double corrected_classical_bound(const DefectMatrix& defects,
                                 const std::vector<double>& probabilities,
                                 SearchBudget budget = {});

struct VerdictThresholds {
    double min_context_probability = 0.98; ///< quantum agreement requires every p_j at or above this
    double refutation_sigma = 3.0;         ///< classical refutation requires this many standard errors
};

/// Full evaluation of a measured (or simulated) run.
struct ParadoxReport {
    std::vector<double> context_sums;        ///< p_j per context
    std::vector<double> context_sum_stderr;  ///< zero when unavailable
    double probability_sum = 0.0;            ///< sum of p_j
    double defect_term = 0.0;                ///< pair compensation
    double defect_term_stderr = 0.0;
    double inequality_lhs = 0.0;             ///< probability_sum - defect_term
    double classical_bound = 0.0;            ///< independence number
    double corrected_bound = 0.0;            ///< classical_bound + defect_term
    double quantum_bound = 0.0;              ///< Lovasz number of the instance
    double margin = 0.0;                     ///< probability_sum - corrected_bound
    double margin_stderr = 0.0;
    double sigma_level = 0.0;                ///< margin over its standard error
    double mean_defect = 0.0;                ///< mean of measured defects
    bool quantum_agreement = false;          ///< every p_j at or above the threshold
    bool classical_refuted = false;          ///< margin exceeds refutation_sigma standard errors
};

/// Assemble a report from per-event probabilities, a context cover and the
/// measured defects.  Standard errors stay zero; callers with resampled
/// uncertainties fill them in and re-apply the verdicts.
ParadoxReport evaluate_paradox(const ContextCover& cover,
                               const std::vector<double>& probabilities,
                               const DefectMatrix& defects, double quantum_bound,
                               const VerdictThresholds& thresholds = {},
                               SearchBudget budget = {});

/// Recompute the two verdict flags and the sigma level from the stored
/// central values and standard errors.
void apply_verdicts(ParadoxReport& report, const VerdictThresholds& thresholds = {});

} // namespace qcb
