#include "qcbound/invariants.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "qcbound/errors.hpp"
#include "qcbound/graph.hpp"
#include "qcbound/spectrum.hpp"

namespace qcb {

namespace {

constexpr int kSearchOrderLimit = 128;

using Bits = std::vector<std::uint64_t>;

int first_bit(const Bits& b) {
    for (std::size_t w = 0; w < b.size(); ++w)
        if (b[w]) return static_cast<int>(w * 64 + std::countr_zero(b[w]));
    return -1;
}

bool any_bit(const Bits& b) {
    for (auto w : b)
        if (w) return true;
    return false;
}

/// Exact maximum clique search (candidate sets as bitsets, greedy-coloring
/// bound, candidates explored from the highest color class down).
class CliqueSearcher {
public:
    CliqueSearcher(const Graph& g, long long max_nodes) : budget_(max_nodes) {
        n_ = g.vertex_count();
        words_ = (n_ + 63) / 64;
        // degree-descending order, ties by lowest index
        order_.resize(n_);
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
            int da = g.degree(a), db = g.degree(b);
            return da != db ? da > db : a < b;
        });
        std::vector<int> pos(n_);
        for (int i = 0; i < n_; ++i) pos[order_[i]] = i;
        adj_.assign(static_cast<std::size_t>(n_) * words_, 0);
        for (auto [u, v] : g.edges()) {
            int a = pos[u], b = pos[v];
            adj_[static_cast<std::size_t>(a) * words_ + b / 64] |= std::uint64_t{1} << (b % 64);
            adj_[static_cast<std::size_t>(b) * words_ + a / 64] |= std::uint64_t{1} << (a % 64);
        }
    }

    CliqueResult run() {
        Bits all(words_, 0);
        for (int i = 0; i < n_; ++i) all[i / 64] |= std::uint64_t{1} << (i % 64);
        cur_.clear();
        expand(all);
        CliqueResult r;
        r.size = best_;
        for (int p : best_set_) r.vertices.push_back(order_[p]);
        std::sort(r.vertices.begin(), r.vertices.end());
        return r;
    }

private:
    const std::uint64_t* row(int p) const { return adj_.data() + static_cast<std::size_t>(p) * words_; }

    void expand(Bits P) {
        if (++nodes_ > budget_)
            throw ResourceError("clique search exceeded its node budget");
        // greedy coloring of the candidates, in position order
        std::vector<int> cand, col;
        Bits rest = P;
        int color = 0;
        while (any_bit(rest)) {
            ++color;
            Bits q = rest;
            int v;
            while ((v = first_bit(q)) >= 0) {
                cand.push_back(v);
                col.push_back(color);
                rest[v / 64] &= ~(std::uint64_t{1} << (v % 64));
                q[v / 64] &= ~(std::uint64_t{1} << (v % 64));
                const std::uint64_t* rv = row(v);
                for (int w = 0; w < words_; ++w) q[w] &= ~rv[w];
            }
        }
        for (int i = static_cast<int>(cand.size()) - 1; i >= 0; --i) {
            if (static_cast<int>(cur_.size()) + col[i] <= best_) return;
            int v = cand[i];
            cur_.push_back(v);
            Bits P2(words_);
            const std::uint64_t* rv = row(v);
            bool nonempty = false;
            for (int w = 0; w < words_; ++w) {
                P2[w] = P[w] & rv[w];
                nonempty |= P2[w] != 0;
            }
            if (!nonempty) {
                if (static_cast<int>(cur_.size()) > best_) {
                    best_ = static_cast<int>(cur_.size());
                    best_set_ = cur_;
                }
            } else {
                expand(std::move(P2));
            }
            cur_.pop_back();
            P[v / 64] &= ~(std::uint64_t{1} << (v % 64));
        }
    }

    int n_ = 0, words_ = 0;
    std::vector<int> order_;
    Bits adj_;
    long long nodes_ = 0, budget_;
    int best_ = 0;
    std::vector<int> cur_, best_set_;
};

/// Backtracking k-colorability with saturation-guided vertex selection.
class ColorSearcher {
public:
    ColorSearcher(const Graph& g, long long max_nodes) : g_(g), budget_(max_nodes) {
        n_ = g.vertex_count();
    }

    bool colorable(int k, std::vector<int>& witness) {
        k_ = k;
        color_.assign(n_, -1);
        neighbor_count_.assign(n_, std::vector<int>(k_, 0));
        used_ = 0;
        if (recurse(0)) {
            witness = color_;
            return true;
        }
        return false;
    }

    long long nodes_used() const { return nodes_; }

private:
    bool recurse(int colored) {
        if (++nodes_ > budget_)
            throw ResourceError("coloring search exceeded its node budget");
        if (colored == n_) return true;
        // most saturated uncolored vertex; ties by uncolored degree, then index
        int pick = -1, best_sat = -1, best_deg = -1;
        for (int v = 0; v < n_; ++v) {
            if (color_[v] >= 0) continue;
            int sat = 0;
            for (int c = 0; c < k_; ++c) sat += neighbor_count_[v][c] > 0;
            if (sat == k_) return false; // dead end: no color available
            int deg = 0;
            for (int u : g_.neighbors(v)) deg += color_[u] < 0;
            if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
                pick = v;
                best_sat = sat;
                best_deg = deg;
            }
        }
        int limit = std::min(k_ - 1, used_); // new colors introduced in order
        for (int c = 0; c <= limit; ++c) {
            if (neighbor_count_[pick][c] > 0) continue;
            color_[pick] = c;
            int old_used = used_;
            used_ = std::max(used_, c + 1);
            for (int u : g_.neighbors(pick)) ++neighbor_count_[u][c];
            if (recurse(colored + 1)) return true;
            for (int u : g_.neighbors(pick)) --neighbor_count_[u][c];
            color_[pick] = -1;
            used_ = old_used;
        }
        return false;
    }

    const Graph& g_;
    int n_ = 0, k_ = 0, used_ = 0;
    std::vector<int> color_;
    std::vector<std::vector<int>> neighbor_count_;
    long long nodes_ = 0, budget_;
};

/// Greedy clique heuristic (a valid chromatic lower bound).
int greedy_clique_size(const Graph& g) {
    int n = g.vertex_count();
    if (n == 0) return 0;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    int best = 1;
    for (int s = 0; s < std::min(n, 8); ++s) {
        std::vector<int> clique{order[s]};
        for (int v : order) {
            bool ok = true;
            for (int u : clique)
                if (u == v || !g.adjacent(u, v)) { ok = false; break; }
            if (ok) clique.push_back(v);
        }
        best = std::max(best, static_cast<int>(clique.size()));
    }
    return best;
}

} // namespace

CliqueResult max_clique(const Graph& g, SearchBudget budget) {
    if (g.vertex_count() > kSearchOrderLimit)
        throw ResourceError("max_clique: order exceeds the 128-vertex exact-search budget");
    if (g.vertex_count() == 0) return {};
    CliqueSearcher s(g, budget.max_nodes);
    return s.run();
}

CliqueResult max_independent_set(const Graph& g, SearchBudget budget) {
    if (g.vertex_count() > kSearchOrderLimit)
        throw ResourceError("max_independent_set: order exceeds the 128-vertex exact-search budget");
    return max_clique(g.complement(), budget);
}

int independence_number(const Graph& g, SearchBudget budget) {
    return max_independent_set(g, budget).size;
}

bool is_bipartite(const Graph& g, std::vector<int>* two_coloring) {
    int n = g.vertex_count();
    std::vector<int> side(n, -1);
    for (int s = 0; s < n; ++s) {
        if (side[s] >= 0) continue;
        side[s] = 0;
        std::deque<int> q{s};
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int u : g.neighbors(v)) {
                if (side[u] < 0) {
                    side[u] = 1 - side[v];
                    q.push_back(u);
                } else if (side[u] == side[v]) {
                    return false;
                }
            }
        }
    }
    if (two_coloring) *two_coloring = side;
    return true;
}

ChromaticResult chromatic_number(const Graph& g, int upper_limit, SearchBudget budget) {
    int n = g.vertex_count();
    if (n > kSearchOrderLimit)
        throw ResourceError("chromatic_number: order exceeds the 128-vertex exact-search budget");
    if (upper_limit < 0) throw std::invalid_argument("chromatic_number: negative upper limit");
    ChromaticResult r;
    if (n == 0) return r;
    if (g.edge_count() == 0) {
        r.value = 1;
        r.coloring.assign(n, 0);
        r.exceeds_limit = upper_limit < 1;
        return r;
    }
    std::vector<int> two;
    if (is_bipartite(g, &two)) {
        r.value = 2;
        r.coloring = two;
        r.exceeds_limit = upper_limit < 2;
        return r;
    }
    int lb = std::max(3, greedy_clique_size(g));
    ColorSearcher cs(g, budget.max_nodes);
    for (int k = lb; k <= upper_limit; ++k) {
        std::vector<int> witness;
        if (cs.colorable(k, witness)) {
            r.value = k;
            r.coloring = witness;
            return r;
        }
    }
    r.value = upper_limit;
    r.exceeds_limit = true;
    return r;
}

ChromaticResult chromatic_number(const Graph& g) {
    return chromatic_number(g, g.vertex_count(), SearchBudget{});
}

std::optional<SrgParams> is_srg(const Graph& g) {
    int n = g.vertex_count();
    if (n < 2 || !g.is_regular()) return std::nullopt;
    int k = g.degree(0);
    if (k == 0 || k == n - 1) return std::nullopt; // a or c undefined
    int a = -1, c = -1;
    int words = g.words_per_row();
    for (int u = 0; u < n; ++u) {
        const std::uint64_t* ru = g.row(u);
        for (int v = u + 1; v < n; ++v) {
            const std::uint64_t* rv = g.row(v);
            int common = 0;
            for (int w = 0; w < words; ++w)
                common += static_cast<int>(std::popcount(ru[w] & rv[w]));
            int& slot = g.adjacent(u, v) ? a : c;
            if (slot < 0)
                slot = common;
            else if (slot != common)
                return std::nullopt;
        }
    }
    return SrgParams{n, k, a, c};
}

double hoffman_bound(const Graph& g) {
    if (!g.is_regular())
        throw std::invalid_argument("hoffman_bound requires a regular graph");
    int n = g.vertex_count();
    if (n == 0 || g.edge_count() == 0)
        throw std::invalid_argument("hoffman_bound requires at least one edge");
    int k = g.degree(0);
    double tau = adjacency_spectrum(g).smallest();
    return n * (-tau) / (k - tau);
}

} // namespace qcb
