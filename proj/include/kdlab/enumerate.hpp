#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <map>
#include <string>
#include <vector>

#include "kdlab/canonical.hpp"
#include "kdlab/errors.hpp"
#include "kdlab/graph.hpp"

namespace kdlab {

inline constexpr int kMaxEnumerationOrder = 8;

namespace detail {

// Every connected graph on m vertices has a non-cut vertex, so it arises from a
// connected graph on m-1 vertices plus one vertex with a nonempty neighborhood.
inline std::vector<Graph> build_connected_level(int n) {
    std::vector<Graph> level{Graph(1)};
    for (int m = 2; m <= n; ++m) {
        std::map<std::uint64_t, Graph> seen;
        for (const Graph& base : level) {
            for (VertexSet nb = 1; nb <= full_set(m - 1); ++nb) {
                Graph g = disjoint_union(base, Graph(1));
                for (int u : members(nb)) g.add_edge(u, m - 1);
                const CanonicalForm form = canonical_form(g);
                const std::uint64_t key = form.pack();
                if (!seen.contains(key)) seen.emplace(key, relabel(g, form.labelling));
            }
        }
        std::vector<Graph> next;
        next.reserve(seen.size());
        for (auto& [key, g] : seen) next.push_back(std::move(g));
        level = std::move(next);
    }
    return level;
}

}  // namespace detail

/// All connected graphs on n <= 8 vertices, one canonically labelled
/// representative per isomorphism class, ascending canonical code. Cached.
inline const std::vector<Graph>& connected_graphs(int n) {
    if (n < 1) throw PreconditionError("enumeration requires n >= 1");
    if (n > kMaxEnumerationOrder) {
        throw PreconditionError("internal enumeration supports n <= 8; for n = " + std::to_string(n) +
                                " supply a graph6 corpus file (e.g. from `geng -c " + std::to_string(n) + "`)");
    }
    static std::mutex mu;
    static std::vector<std::vector<Graph>> cache(kMaxEnumerationOrder + 1);
    static std::vector<bool> ready(kMaxEnumerationOrder + 1, false);
    std::lock_guard lock(mu);
    if (!ready[static_cast<std::size_t>(n)]) {
        cache[static_cast<std::size_t>(n)] = detail::build_connected_level(n);
        ready[static_cast<std::size_t>(n)] = true;
    }
    return cache[static_cast<std::size_t>(n)];
}

/// Emits every connected graph on n vertices with at least `min_edges` edges and
/// minimum degree at least `min_deg`; returns the number emitted.
inline std::size_t enumerate_connected(int n, std::size_t min_edges, int min_deg,
                                       const std::function<void(const Graph&)>& sink) {
    std::size_t emitted = 0;
    for (const Graph& g : connected_graphs(n)) {
        if (g.edge_count() < min_edges || min_degree(g) < min_deg) continue;
        sink(g);
        ++emitted;
    }
    return emitted;
}

}  // namespace kdlab
