#pragma once

// Canonical labelling and isomorphism testing for small graphs.
//
// The canonical form is the lexicographically smallest upper-triangle bit
// string (graph6 column order) over all vertex orderings that list the
// color-refinement cells in color order. Refinement colors are isomorphism
// invariant, so two graphs are isomorphic iff their forms are equal.
// Orderings differing only by a swap of twin vertices give identical strings
// and are explored once.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "kdlab/graph.hpp"

namespace kdlab {

/// Stable color refinement (1-dimensional Weisfeiler-Leman) started from degrees.
/// Colors are dense ids 0..c-1 assigned in sorted-signature order.
inline std::vector<int> refine_colors(const Graph& g) {
    const int n = g.order();
    std::vector<int> color(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) color[static_cast<std::size_t>(v)] = g.degree(v);
    int classes = -1;
    for (;;) {
        std::vector<std::pair<int, std::vector<int>>> sig(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) {
            auto& [own, nb] = sig[static_cast<std::size_t>(v)];
            own = color[static_cast<std::size_t>(v)];
            for (int u : members(g.neighbors(v))) nb.push_back(color[static_cast<std::size_t>(u)]);
            std::sort(nb.begin(), nb.end());
        }
        std::map<std::pair<int, std::vector<int>>, int> ids;
        for (const auto& s : sig) ids.emplace(s, 0);
        int next = 0;
        for (auto& [key, id] : ids) id = next++;
        for (int v = 0; v < n; ++v) color[static_cast<std::size_t>(v)] = ids.at(sig[static_cast<std::size_t>(v)]);
        if (next == classes) break;
        classes = next;
    }
    return color;
}

/// u and v are twins when N(u) \ {v} == N(v) \ {u}; swapping them is an automorphism.
inline bool are_twins(const Graph& g, int u, int v) {
    return (g.neighbors(u) & ~singleton(v)) == (g.neighbors(v) & ~singleton(u));
}

struct CanonicalForm {
    int order = 0;
    /// columns[j] holds x(0,j)..x(j-1,j) with x(0,j) as the most significant of j bits.
    std::vector<std::uint64_t> columns;
    /// labelling[p] = original vertex placed at canonical position p.
    std::vector<int> labelling;

    friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
        return a.order == b.order && a.columns == b.columns;
    }
    friend std::strong_ordering operator<=>(const CanonicalForm& a, const CanonicalForm& b) {
        if (auto c = a.order <=> b.order; c != 0) return c;
        return a.columns <=> b.columns;
    }

    /// Single-word key; valid when order <= 11 (at most 55 bits).
    std::uint64_t pack() const {
        std::uint64_t key = 0;
        for (int j = 1; j < order; ++j) key = (key << j) | columns[static_cast<std::size_t>(j)];
        return key;
    }
};

namespace detail {

class CanonicalSearch {
public:
    explicit CanonicalSearch(const Graph& g) : g_(g), n_(g.order()) {
        const std::vector<int> color = refine_colors(g);
        std::vector<int> by_color(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v) by_color[static_cast<std::size_t>(v)] = v;
        std::stable_sort(by_color.begin(), by_color.end(), [&](int a, int b) {
            return color[static_cast<std::size_t>(a)] < color[static_cast<std::size_t>(b)];
        });
        slot_cell_.resize(static_cast<std::size_t>(n_));
        for (int p = 0; p < n_; ++p) {
            const int c = color[static_cast<std::size_t>(by_color[static_cast<std::size_t>(p)])];
            VertexSet cell = 0;
            for (int v = 0; v < n_; ++v)
                if (color[static_cast<std::size_t>(v)] == c) cell |= singleton(v);
            slot_cell_[static_cast<std::size_t>(p)] = cell;
        }
        twin_class_.resize(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v) {
            twin_class_[static_cast<std::size_t>(v)] = v;
            for (int u = 0; u < v; ++u) {
                if (color[static_cast<std::size_t>(u)] == color[static_cast<std::size_t>(v)] && are_twins(g, u, v)) {
                    twin_class_[static_cast<std::size_t>(v)] = twin_class_[static_cast<std::size_t>(u)];
                    break;
                }
            }
        }
        current_.assign(static_cast<std::size_t>(n_), 0);
        placed_.assign(static_cast<std::size_t>(n_), -1);
    }

    CanonicalForm run() {
        if (n_ > 0) descend(0, 0, false);
        CanonicalForm f;
        f.order = n_;
        f.columns = best_cols_.empty() ? std::vector<std::uint64_t>(static_cast<std::size_t>(n_), 0) : best_cols_;
        f.labelling = best_perm_;
        return f;
    }

private:
    // `less` means the prefix placed so far is already smaller than the best.
    void descend(int p, VertexSet used, bool less) {
        if (p == n_) {
            if (best_cols_.empty() || less) {
                best_cols_ = current_;
                best_perm_ = placed_;
                ++epoch_;
            }
            return;
        }
        const std::uint64_t seen_epoch = epoch_;
        VertexSet tried_twins = 0;
        for (VertexSet cand = slot_cell_[static_cast<std::size_t>(p)] & ~used; cand != 0; cand &= cand - 1) {
            const int v = lowest_vertex(cand);
            const int tc = twin_class_[static_cast<std::size_t>(v)];
            if (tried_twins & singleton(tc)) continue;
            tried_twins |= singleton(tc);

            std::uint64_t col = 0;
            const VertexSet nb = g_.neighbors(v);
            for (int i = 0; i < p; ++i) col = (col << 1) | ((nb >> placed_[static_cast<std::size_t>(i)]) & 1U);

            // A leaf update below this level makes the prefix equal to the best again.
            bool child_less = (epoch_ != seen_epoch) ? false : less;
            if (!best_cols_.empty() && !child_less) {
                const std::uint64_t ref = best_cols_[static_cast<std::size_t>(p)];
                if (col > ref) continue;
                if (col < ref) child_less = true;
            }
            current_[static_cast<std::size_t>(p)] = col;
            placed_[static_cast<std::size_t>(p)] = v;
            descend(p + 1, used | singleton(v), child_less);
            if (epoch_ != seen_epoch) less = false;
        }
    }

    const Graph& g_;
    int n_;
    std::vector<VertexSet> slot_cell_;
    std::vector<int> twin_class_;
    std::vector<std::uint64_t> current_;
    std::vector<int> placed_;
    std::vector<std::uint64_t> best_cols_;
    std::vector<int> best_perm_;
    std::uint64_t epoch_ = 0;
};

}  // namespace detail

/// Worst case is exponential in the size of refinement cells without twins;
/// intended for the n <= 8 enumeration corpora and structured extremal graphs.
inline CanonicalForm canonical_form(const Graph& g) { return detail::CanonicalSearch(g).run(); }

/// Relabel g so that vertex p of the result is labelling[p] of g.
inline Graph relabel(const Graph& g, const std::vector<int>& labelling) {
    Graph h(g.order());
    for (int p = 0; p < g.order(); ++p)
        for (int q = p + 1; q < g.order(); ++q)
            if (g.has_edge(labelling[static_cast<std::size_t>(p)], labelling[static_cast<std::size_t>(q)])) h.add_edge(p, q);
    return h;
}

inline Graph canonical_graph(const Graph& g) { return relabel(g, canonical_form(g).labelling); }

/// Explicit isomorphism search: returns map[v] = image in h of vertex v of g.
/// Candidates are restricted by joint color refinement of g + h; the mapping is
/// re-verified edge by edge before it is returned.
inline std::optional<std::vector<int>> find_isomorphism(const Graph& g, const Graph& h) {
    const int n = g.order();
    if (h.order() != n || g.edge_count() != h.edge_count()) return std::nullopt;
    if (degree_sequence(g) != degree_sequence(h)) return std::nullopt;
    if (n == 0) return std::vector<int>{};
    if (2 * n > kMaxOrder) {
        // Joint refinement needs g + h in one graph; fall back to canonical forms.
        const CanonicalForm fg = canonical_form(g);
        const CanonicalForm fh = canonical_form(h);
        if (fg != fh) return std::nullopt;
        std::vector<int> map(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p)
            map[static_cast<std::size_t>(fg.labelling[static_cast<std::size_t>(p)])] = fh.labelling[static_cast<std::size_t>(p)];
        return map;
    }

    const std::vector<int> joint = refine_colors(disjoint_union(g, h));
    std::vector<int> cg(joint.begin(), joint.begin() + n);
    std::vector<int> ch(joint.begin() + n, joint.end());
    {
        auto a = cg, b = ch;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return std::nullopt;
    }
    // Map vertices of g in order of increasing color-class size.
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
    std::vector<int> class_size(joint.size() + 1, 0);
    for (int c : cg) ++class_size[static_cast<std::size_t>(c)];
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return class_size[static_cast<std::size_t>(cg[static_cast<std::size_t>(a)])] <
               class_size[static_cast<std::size_t>(cg[static_cast<std::size_t>(b)])];
    });

    std::vector<int> map(static_cast<std::size_t>(n), -1);
    auto extend = [&](auto&& self, std::size_t depth, VertexSet used) -> bool {
        if (depth == order.size()) return true;
        const int v = order[depth];
        VertexSet tried_twins = 0;
        for (int w = 0; w < n; ++w) {
            if ((used >> w) & 1U) continue;
            if (ch[static_cast<std::size_t>(w)] != cg[static_cast<std::size_t>(v)]) continue;
            bool twin_seen = false;
            for (int t : members(tried_twins)) {
                if (are_twins(h, t, w)) { twin_seen = true; break; }
            }
            if (twin_seen) continue;
            tried_twins |= singleton(w);
            bool ok = true;
            for (std::size_t i = 0; i < depth && ok; ++i) {
                const int u = order[i];
                ok = g.has_edge(u, v) == h.has_edge(map[static_cast<std::size_t>(u)], w);
            }
            if (!ok) continue;
            map[static_cast<std::size_t>(v)] = w;
            if (self(self, depth + 1, used | singleton(w))) return true;
        }
        map[static_cast<std::size_t>(v)] = -1;
        return false;
    };
    if (!extend(extend, 0, 0)) return std::nullopt;
    for (auto [u, v] : g.edges())
        if (!h.has_edge(map[static_cast<std::size_t>(u)], map[static_cast<std::size_t>(v)])) return std::nullopt;
    return map;
}

inline bool are_isomorphic(const Graph& g, const Graph& h) { return find_isomorphism(g, h).has_value(); }

}  // namespace kdlab
