#pragma once

#include <algorithm>
#include <bit>
#include <functional>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "kdlab/errors.hpp"

namespace kdlab {

/// Set of vertex indices packed into one machine word; bit v stands for vertex v.
using VertexSet = std::uint64_t;

inline constexpr int kMaxOrder = 64;

constexpr VertexSet full_set(int n) {
    return n >= 64 ? ~VertexSet{0} : (VertexSet{1} << n) - 1;
}

constexpr VertexSet singleton(int v) { return VertexSet{1} << v; }

inline int set_size(VertexSet s) { return std::popcount(s); }

inline int lowest_vertex(VertexSet s) { return std::countr_zero(s); }

/// Members of `s` in ascending order.
inline std::vector<int> members(VertexSet s) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(set_size(s)));
    for (; s != 0; s &= s - 1) out.push_back(lowest_vertex(s));
    return out;
}

inline VertexSet make_set(std::initializer_list<int> vs) {
    VertexSet s = 0;
    for (int v : vs) s |= singleton(v);
    return s;
}

/// Simple undirected graph on vertices 0..n-1 with n <= 64.
class Graph {
public:
    /// The null graph K_0.
    Graph() = default;

    /// Edgeless graph on `order` vertices.
    explicit Graph(int order) : adj_(checked_order(order), 0) {}

    static Graph from_edges(int order, std::initializer_list<std::pair<int, int>> edges) {
        Graph g(order);
        for (auto [u, v] : edges) g.add_edge(u, v);
        return g;
    }

    int order() const noexcept { return static_cast<int>(adj_.size()); }

    VertexSet vertices() const noexcept { return full_set(order()); }

    VertexSet neighbors(int v) const { return adj_.at(static_cast<std::size_t>(v)); }

    int degree(int v) const { return set_size(neighbors(v)); }

    bool has_edge(int u, int v) const { return (neighbors(u) >> v) & 1U; }

    void add_edge(int u, int v) {
        check_pair(u, v);
        adj_[static_cast<std::size_t>(u)] |= singleton(v);
        adj_[static_cast<std::size_t>(v)] |= singleton(u);
    }

    void remove_edge(int u, int v) {
        check_pair(u, v);
        adj_[static_cast<std::size_t>(u)] &= ~singleton(v);
        adj_[static_cast<std::size_t>(v)] &= ~singleton(u);
    }

    std::size_t edge_count() const noexcept {
        std::size_t twice = 0;
        for (VertexSet row : adj_) twice += static_cast<std::size_t>(set_size(row));
        return twice / 2;
    }

    /// Edges as (min, max) pairs sorted by min endpoint, then max endpoint.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < order(); ++u) {
            for (int v : members(neighbors(u) & ~full_set(u + 1))) out.emplace_back(u, v);
        }
        return out;
    }

    const std::vector<VertexSet>& rows() const noexcept { return adj_; }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    static std::size_t checked_order(int order) {
        if (order < 0 || order > kMaxOrder) {
            throw ResourceError("graph order " + std::to_string(order) + " outside 0..64");
        }
        return static_cast<std::size_t>(order);
    }

    void check_pair(int u, int v) const {
        if (u < 0 || v < 0 || u >= order() || v >= order()) {
            throw PreconditionError("vertex index out of range");
        }
        if (u == v) throw PreconditionError("loops are not allowed");
    }

    std::vector<VertexSet> adj_;
};

// ---------------------------------------------------------------------------
// Named graphs

inline Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

inline Graph empty_graph(int n) { return Graph(n); }

inline Graph path_graph(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

inline Graph cycle_graph(int n) {
    Graph g = path_graph(n);
    if (n >= 3) g.add_edge(0, n - 1);
    return g;
}

// ---------------------------------------------------------------------------
// Construction algebra

/// G1 + G2: vertices of g2 are shifted by g1.order().
inline Graph disjoint_union(const Graph& g1, const Graph& g2) {
    const int n1 = g1.order();
    if (n1 + g2.order() > kMaxOrder) throw ResourceError("disjoint union exceeds 64 vertices");
    Graph g(n1 + g2.order());
    for (auto [u, v] : g1.edges()) g.add_edge(u, v);
    for (auto [u, v] : g2.edges()) g.add_edge(u + n1, v + n1);
    return g;
}

/// G1 v G2: disjoint union plus every edge between the two vertex sets.
inline Graph join(const Graph& g1, const Graph& g2) {
    Graph g = disjoint_union(g1, g2);
    const int n1 = g1.order();
    for (int u = 0; u < n1; ++u)
        for (int v = n1; v < g.order(); ++v) g.add_edge(u, v);
    return g;
}

inline Graph complement(const Graph& g) {
    Graph c(g.order());
    for (int u = 0; u < g.order(); ++u)
        for (int v = u + 1; v < g.order(); ++v)
            if (!g.has_edge(u, v)) c.add_edge(u, v);
    return c;
}

inline Graph complete_bipartite(int a, int b) { return join(empty_graph(a), empty_graph(b)); }

/// Subgraph induced on `keep`; surviving vertices are renumbered by ascending original index.
inline Graph induced_subgraph(const Graph& g, VertexSet keep) {
    if ((keep & ~g.vertices()) != 0) throw PreconditionError("vertex index out of range");
    const std::vector<int> old = members(keep);
    Graph h(static_cast<int>(old.size()));
    for (std::size_t i = 0; i < old.size(); ++i)
        for (std::size_t j = i + 1; j < old.size(); ++j)
            if (g.has_edge(old[i], old[j])) h.add_edge(static_cast<int>(i), static_cast<int>(j));
    return h;
}

/// G - S.
inline Graph induced_delete(const Graph& g, VertexSet removed) {
    if ((removed & ~g.vertices()) != 0) throw PreconditionError("vertex index out of range");
    return induced_subgraph(g, g.vertices() & ~removed);
}

// ---------------------------------------------------------------------------
// Degrees and components

inline int min_degree(const Graph& g) {
    if (g.order() == 0) throw PreconditionError("minimum degree of the null graph is undefined");
    int best = g.order();
    for (int v = 0; v < g.order(); ++v) best = std::min(best, g.degree(v));
    return best;
}

inline int max_degree(const Graph& g) {
    int best = 0;
    for (int v = 0; v < g.order(); ++v) best = std::max(best, g.degree(v));
    return best;
}

inline std::vector<int> degree_sequence(const Graph& g) {
    std::vector<int> out;
    for (int v = 0; v < g.order(); ++v) out.push_back(g.degree(v));
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

/// Vertices reachable from `start` without leaving `alive`.
inline VertexSet reach_within(const Graph& g, int start, VertexSet alive) {
    VertexSet seen = singleton(start);
    VertexSet frontier = seen;
    while (frontier != 0) {
        VertexSet next = 0;
        for (VertexSet f = frontier; f != 0; f &= f - 1) next |= g.neighbors(lowest_vertex(f));
        next &= alive & ~seen;
        seen |= next;
        frontier = next;
    }
    return seen;
}

inline bool is_connected(const Graph& g) {
    if (g.order() == 0) return true;
    return reach_within(g, 0, g.vertices()) == g.vertices();
}

struct ComponentStats {
    std::vector<int> component_sizes;  // ascending
    int odd_nontrivial = 0;            // odd(G): odd components of order >= 3
    int isolated = 0;                  // i(G)

    friend bool operator==(const ComponentStats&, const ComponentStats&) = default;
};

/// Component statistics of the subgraph induced on `alive`, without materialising it.
inline ComponentStats component_stats(const Graph& g, VertexSet alive) {
    ComponentStats st;
    for (VertexSet rest = alive; rest != 0;) {
        const VertexSet comp = reach_within(g, lowest_vertex(rest), alive);
        rest &= ~comp;
        const int size = set_size(comp);
        st.component_sizes.push_back(size);
        if (size == 1) ++st.isolated;
        else if (size % 2 == 1) ++st.odd_nontrivial;
    }
    std::sort(st.component_sizes.begin(), st.component_sizes.end());
    return st;
}

inline ComponentStats component_stats(const Graph& g) { return component_stats(g, g.vertices()); }

/// odd(G - S) and i(G - S) only; the hot path of the barrier search.
struct ResidualCounts {
    int odd_nontrivial = 0;
    int isolated = 0;
};

inline ResidualCounts residual_counts(const Graph& g, VertexSet removed) {
    ResidualCounts rc;
    VertexSet rest = g.vertices() & ~removed;
    while (rest != 0) {
        const int v = lowest_vertex(rest);
        if ((g.neighbors(v) & rest) == 0) {
            ++rc.isolated;
            rest &= ~singleton(v);
            continue;
        }
        const VertexSet comp = reach_within(g, v, rest);
        rest &= ~comp;
        if (set_size(comp) % 2 == 1) ++rc.odd_nontrivial;
    }
    return rc;
}

}  // namespace kdlab
