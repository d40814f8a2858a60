#pragma once

#include <optional>
#include <vector>

namespace qcb {

class Graph;

/// Node budget for the exact branch-and-bound searches. The searches raise
/// ResourceError when exhausted; they never return a possibly wrong value.
struct SearchBudget {
    long long max_nodes = 200'000'000;
};

struct CliqueResult {
    int size = 0;
    std::vector<int> vertices; ///< witness clique (or independent set)
};

/// Exact maximum clique via branch and bound with greedy-coloring upper
/// bounds; vertices explored in degree-descending order, ties by lowest index.
/// Guarded by a 128-vertex order budget.
CliqueResult max_clique(const Graph& g, SearchBudget budget = {});

/// Exact maximum independent set (clique search on the complement).
CliqueResult max_independent_set(const Graph& g, SearchBudget budget = {});
int independence_number(const Graph& g, SearchBudget budget = {});

struct ChromaticResult {
    int value = 0;                ///< exact chromatic number when !exceeds_limit
    std::vector<int> coloring;    ///< proper coloring witness, colors 0..value-1
    bool exceeds_limit = false;   ///< set when the chromatic number > upper_limit
};

/// Exact chromatic number by saturation-guided backtracking (bipartite fast
/// path for k<=2). When the graph needs more than upper_limit colors the
/// result is flagged instead of guessing.
ChromaticResult chromatic_number(const Graph& g, int upper_limit, SearchBudget budget = {});
ChromaticResult chromatic_number(const Graph& g);

bool is_bipartite(const Graph& g, std::vector<int>* two_coloring = nullptr);

/// Parameters (n, k, a, c) of a strongly regular graph: every adjacent pair
/// has a common neighbors, every distinct non-adjacent pair has c.
struct SrgParams {
    int n = 0, k = 0, a = 0, c = 0;
};

/// Empty result when the graph is not strongly regular (complete and empty
/// graphs are excluded since one of a, c is undefined).
std::optional<SrgParams> is_srg(const Graph& g);

/// Spectral bound n(-tau)/(k-tau) for a k-regular graph with smallest
/// adjacency eigenvalue tau. Upper-bounds the independence number.
double hoffman_bound(const Graph& g);

} // namespace qcb
