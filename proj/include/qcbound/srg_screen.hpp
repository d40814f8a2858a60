#pragma once

#include <string>
#include <vector>

#include "qcbound/invariants.hpp"

namespace qcb {

/// Eigenvalues and multiplicities of a putative strongly regular graph,
/// derived in closed form from the parameter tuple.  `feasible` is false
/// when the multiplicities fail to be non-negative integers, which rules the
/// parameter set out.
struct SrgSpectrum {
    double lambda1 = 0.0; ///< larger non-trivial eigenvalue
    double lambda2 = 0.0; ///< smaller non-trivial eigenvalue
    long long m1 = -1;
    long long m2 = -1;
    bool feasible = false;
};

SrgSpectrum srg_multiplicities(const SrgParams& p);

/// Why a candidate parameter set cannot host a three-context paradox.
enum class EliminationReason {
    surviving,
    non_integer_multiplicity,
    hoffman_chi_violation,
    k_not_in_set,
    bipartite_chi2,
    petersen_theta,
    clebsch_chi4,
    counting_contradiction,
};

std::string to_string(EliminationReason r);

struct ScreenCandidate {
    int c = 0;
    int k = 0;
    long long n = 0; ///< order forced by the parameters, 0 when undetermined
    double s = 0.0;  ///< sqrt(c^2 + 4(k - c))
    bool s_integral = false;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    long long m1 = -1;
    long long m2 = -1;
    EliminationReason reason = EliminationReason::surviving;
    double verified_value = 0.0; ///< live-checked invariant when applicable
    std::string note;
};

struct ScreenRecord {
    int c = 0;
    std::vector<ScreenCandidate> candidates;
};

struct ScreenReport {
    int c_max = 0;
    std::vector<ScreenRecord> records;
    int survivors = 0;
    std::string verdict;
};

/// Degrees k in [c, 2c+3] that survive the eigenvalue-bound inequality and
/// the integrality of sqrt(c^2 + 4(k-c)); always a subset of {c, 2c+1}.
std::vector<int> feasible_k_values(int c);

/// Exhaustive screen showing that no strongly regular exclusivity graph
/// hosts a three-context paradox, one record per common-neighbor count c up
/// to c_max.  The two parameter families that survive the arithmetic
/// filters are eliminated branch by branch: k = c is complete bipartite
/// (two-colorable); k = 2c+1 gives a single edge for c = 0, the 10-vertex
/// triple-system graph for c = 1 (eliminated by the Lovasz number of its
/// complement, re-verified numerically), the 16-vertex folded-cube graph
/// for c = 2 (eliminated by its chromatic number, re-verified), and an
/// integer counting contradiction for c >= 3.  Requires c_max >= 3.
ScreenReport screen_three_context(int c_max);

} // namespace qcb
