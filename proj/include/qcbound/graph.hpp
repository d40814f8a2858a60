#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qcb {

/// Simple undirected graph on vertices 0..n-1 with bitset adjacency rows.
/// Self-loops and parallel edges are rejected at insertion.
class Graph {
public:
    explicit Graph(int n);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    void add_edge(int u, int v);
    bool adjacent(int u, int v) const;

    /// Edges as (u, v) with u < v, sorted lexicographically.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    int degree(int v) const;
    int min_degree() const;
    int max_degree() const;
    bool is_regular() const;

    std::vector<int> neighbors(int v) const;

    /// Adjacency row of v as 64-bit words (bit u set iff u ~ v).
    const std::uint64_t* row(int v) const { return bits_.data() + static_cast<std::size_t>(v) * words_; }
    int words_per_row() const { return words_; }

    Graph complement() const;

    /// Relabeled copy: vertex v of the result is vertex perm[v] of *this.
    Graph permuted(const std::vector<int>& perm) const;

    bool operator==(const Graph& other) const;

private:
    int n_;
    int words_;
    std::vector<std::uint64_t> bits_;
    std::vector<std::pair<int, int>> edges_;
};

/// Parses the edge-list format:
///   first non-comment line   n=<vertex count>
///   following lines          <u> <v>
/// '#' starts a comment; blank lines are ignored. Errors name the line.
Graph load_graph(std::istream& in);
Graph load_graph_file(const std::string& path);

void save_graph(const Graph& g, std::ostream& out);

/// Named fixtures: pentagon, petersen, clebsch, shrikhande,
/// shrikhande-complement, perkel, perkel-complement, complete-<n>, empty-<n>.
/// Underscores are accepted in place of dashes.
Graph named_graph(std::string_view name);

/// Names accepted by named_graph (the parametric families listed once).
std::vector<std::string> named_graph_list();

/// Checks the curated 57-vertex distance-regular graph used as the canonical
/// three-context host: order/degree/edge count, triangle freeness, chromatic
/// number 3, spectral fingerprint, and clique number 2.
struct PerkelCheck {
    bool ok = false;
    std::vector<std::string> failures;
};
PerkelCheck validate_perkel(const Graph& g);

} // namespace qcb
