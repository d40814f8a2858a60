#include "qcbound/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qcbound/errors.hpp"
#include "qcbound/invariants.hpp"
#include "qcbound/perkel_data.hpp"
#include "qcbound/spectrum.hpp"

namespace qcb {

namespace {
constexpr int kMaxVertices = 4096;
}

Graph::Graph(int n) : n_(n) {
    if (n < 0 || n > kMaxVertices)
        throw std::invalid_argument("graph order must be between 0 and 4096");
    words_ = (n + 63) / 64;
    bits_.assign(static_cast<std::size_t>(n) * words_, 0);
}

void Graph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw std::invalid_argument("edge endpoint out of range");
    if (u == v)
        throw std::invalid_argument("self-loops are not allowed");
    if (adjacent(u, v))
        throw std::invalid_argument("duplicate edge");
    bits_[static_cast<std::size_t>(u) * words_ + v / 64] |= (std::uint64_t{1} << (v % 64));
    bits_[static_cast<std::size_t>(v) * words_ + u / 64] |= (std::uint64_t{1} << (u % 64));
    edges_.emplace_back(std::min(u, v), std::max(u, v));
    // Insertion sort keeps the edge list ordered without re-sorting wholesale.
    for (std::size_t i = edges_.size(); i > 1 && edges_[i - 1] < edges_[i - 2]; --i)
        std::swap(edges_[i - 1], edges_[i - 2]);
}

bool Graph::adjacent(int u, int v) const {
    return (bits_[static_cast<std::size_t>(u) * words_ + v / 64] >> (v % 64)) & 1u;
}

int Graph::degree(int v) const {
    int d = 0;
    const std::uint64_t* r = row(v);
    for (int w = 0; w < words_; ++w) d += static_cast<int>(std::popcount(r[w]));
    return d;
}

int Graph::min_degree() const {
    int m = n_ == 0 ? 0 : degree(0);
    for (int v = 1; v < n_; ++v) m = std::min(m, degree(v));
    return m;
}

int Graph::max_degree() const {
    int m = 0;
    for (int v = 0; v < n_; ++v) m = std::max(m, degree(v));
    return m;
}

bool Graph::is_regular() const {
    return n_ == 0 || min_degree() == max_degree();
}

std::vector<int> Graph::neighbors(int v) const {
    std::vector<int> out;
    out.reserve(degree(v));
    for (int u = 0; u < n_; ++u)
        if (adjacent(v, u)) out.push_back(u);
    return out;
}

Graph Graph::complement() const {
    Graph c(n_);
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (!adjacent(u, v)) c.add_edge(u, v);
    return c;
}

Graph Graph::permuted(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != n_)
        throw std::invalid_argument("permutation size mismatch");
    std::vector<bool> seen(n_, false);
    for (int p : perm) {
        if (p < 0 || p >= n_ || seen[p])
            throw std::invalid_argument("not a permutation");
        seen[p] = true;
    }
    // result vertex v corresponds to original vertex perm[v]
    std::vector<int> inv(n_);
    for (int v = 0; v < n_; ++v) inv[perm[v]] = v;
    Graph g(n_);
    for (auto [u, v] : edges_) g.add_edge(inv[u], inv[v]);
    return g;
}

bool Graph::operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
}

Graph load_graph(std::istream& in) {
    std::string line;
    int lineno = 0;
    int n = -1;
    Graph g(0);
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue; // blank or comment-only line
        if (n < 0) {
            if (first.rfind("n=", 0) != 0)
                throw ParseError("line " + std::to_string(lineno) +
                                 ": expected header 'n=<count>', got '" + first + "'");
            try {
                std::size_t pos = 0;
                n = std::stoi(first.substr(2), &pos);
                if (pos != first.size() - 2) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(lineno) + ": bad vertex count in '" + first + "'");
            }
            if (n < 0 || n > kMaxVertices)
                throw ParseError("line " + std::to_string(lineno) + ": vertex count out of range");
            g = Graph(n);
            std::string extra;
            if (ls >> extra)
                throw ParseError("line " + std::to_string(lineno) + ": trailing tokens after header");
            continue;
        }
        int u, v;
        std::istringstream es(line);
        if (!(es >> u >> v))
            throw ParseError("line " + std::to_string(lineno) + ": expected '<u> <v>'");
        std::string extra;
        if (es >> extra)
            throw ParseError("line " + std::to_string(lineno) + ": trailing tokens after edge");
        try {
            g.add_edge(u, v);
        } catch (const std::invalid_argument& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (n < 0) throw ParseError("missing 'n=<count>' header");
    return g;
}

Graph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file: " + path);
    return load_graph(in);
}

void save_graph(const Graph& g, std::ostream& out) {
    out << "n=" << g.vertex_count() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
}

namespace {

Graph make_cycle(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Graph make_petersen() {
    Graph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);       // outer cycle
        g.add_edge(i, i + 5);             // spokes
        g.add_edge(5 + i, 5 + (i + 2) % 5); // inner pentagram
    }
    return g;
}

// Folded 5-cube: vertices {0,1}^4, adjacent iff Hamming distance 1 or 4.
Graph make_clebsch() {
    Graph g(16);
    for (int u = 0; u < 16; ++u)
        for (int v = u + 1; v < 16; ++v) {
            int d = std::popcount(static_cast<unsigned>(u ^ v));
            if (d == 1 || d == 4) g.add_edge(u, v);
        }
    return g;
}

// Cayley graph on Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)}.
Graph make_shrikhande() {
    Graph g(16);
    auto idx = [](int a, int b) { return 4 * ((a % 4 + 4) % 4) + ((b % 4 + 4) % 4); };
    const int conn[3][2] = {{1, 0}, {0, 1}, {1, 1}};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (auto& c : conn) {
                int u = idx(a, b), v = idx(a + c[0], b + c[1]);
                if (!g.adjacent(u, v)) g.add_edge(std::min(u, v), std::max(u, v));
            }
    return g;
}

Graph make_perkel() {
    Graph g(57);
    for (auto [u, v] : detail::kPerkelEdges) g.add_edge(u, v);
    return g;
}

const Graph& validated_perkel() {
    static const Graph g = [] {
        Graph p = make_perkel();
        PerkelCheck chk = validate_perkel(p);
        if (!chk.ok) {
            std::string msg = "embedded 57-vertex graph failed validation:";
            for (const auto& f : chk.failures) msg += " " + f + ";";
            throw std::logic_error(msg);
        }
        return p;
    }();
    return g;
}

} // namespace

Graph named_graph(std::string_view name) {
    std::string key(name);
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "pentagon") return make_cycle(5);
    if (key == "petersen") return make_petersen();
    if (key == "petersen-complement") return make_petersen().complement();
    if (key == "clebsch") return make_clebsch();
    if (key == "shrikhande") return make_shrikhande();
    if (key == "shrikhande-complement") return make_shrikhande().complement();
    if (key == "perkel") return validated_perkel();
    if (key == "perkel-complement") return validated_perkel().complement();
    auto parse_tail = [&](std::string_view prefix) -> int {
        std::string tail(key.substr(prefix.size()));
        try {
            std::size_t pos = 0;
            int n = std::stoi(tail, &pos);
            if (pos != tail.size() || n < 0) return -1;
            return n;
        } catch (const std::exception&) {
            return -1;
        }
    };
    if (key.rfind("complete-", 0) == 0) {
        int n = parse_tail("complete-");
        if (n >= 0) {
            Graph g(n);
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
            return g;
        }
    }
    if (key.rfind("empty-", 0) == 0) {
        int n = parse_tail("empty-");
        if (n >= 0) return Graph(n);
    }
    if (key.rfind("cycle-", 0) == 0) {
        int n = parse_tail("cycle-");
        if (n >= 3) return make_cycle(n);
    }
    throw std::invalid_argument("unknown graph name: " + key);
}

std::vector<std::string> named_graph_list() {
    return {"pentagon",   "petersen",   "petersen-complement", "clebsch",
            "shrikhande", "shrikhande-complement", "perkel", "perkel-complement",
            "complete-<n>", "empty-<n>", "cycle-<n>"};
}

PerkelCheck validate_perkel(const Graph& g) {
    PerkelCheck r;
    auto fail = [&](const std::string& s) { r.failures.push_back(s); };
    if (g.vertex_count() != 57) fail("order != 57");
    if (g.edge_count() != 171) fail("edge count != 171");
    if (!g.is_regular() || (g.vertex_count() > 0 && g.degree(0) != 6)) fail("not 6-regular");
    if (!r.failures.empty()) { r.ok = false; return r; }

    // triangle freeness: adjacent pairs share no common neighbor
    for (auto [u, v] : g.edges()) {
        const std::uint64_t* ru = g.row(u);
        const std::uint64_t* rv = g.row(v);
        for (int w = 0; w < g.words_per_row(); ++w)
            if (ru[w] & rv[w]) { fail("contains a triangle"); break; }
        if (!r.failures.empty()) break;
    }

    // spectral fingerprint {6^1, ((3+sqrt5)/2)^18, ((3-sqrt5)/2)^18, (-3)^20}
    SpectrumSummary sp = adjacency_spectrum(g);
    const double s5 = std::sqrt(5.0);
    const double want_vals[] = {-3.0, (3.0 - s5) / 2.0, (3.0 + s5) / 2.0, 6.0};
    const int want_mult[] = {20, 18, 18, 1};
    if (sp.eigenvalues.size() != 4) {
        fail("spectrum does not have 4 distinct eigenvalues");
    } else {
        for (int i = 0; i < 4; ++i) {
            if (std::abs(sp.eigenvalues[i] - want_vals[i]) > 1e-8 || sp.multiplicities[i] != want_mult[i]) {
                fail("spectral fingerprint mismatch");
                break;
            }
        }
    }

    // clique number 2 (equivalently: complement independence number 2)
    CliqueResult cl = max_clique(g);
    if (cl.size != 2) fail("clique number != 2");

    // chromatic number 3 with three 19-vertex classes
    ChromaticResult cr = chromatic_number(g, 3);
    if (cr.exceeds_limit || cr.value != 3) {
        fail("chromatic number != 3");
    } else {
        int counts[3] = {0, 0, 0};
        for (int c : cr.coloring) ++counts[c];
        if (counts[0] != 19 || counts[1] != 19 || counts[2] != 19)
            fail("3-coloring classes are not 19/19/19");
    }

    r.ok = r.failures.empty();
    return r;
}

} // namespace qcb
