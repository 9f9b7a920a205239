#pragma once

// Slow, direct reference implementations used only by the tests. Nothing here
// calls the library routine it is checking.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "kdlab/graph.hpp"

namespace oracle {

using kdlab::Graph;

inline std::vector<std::vector<bool>> matrix(const Graph& g) {
    std::vector<std::vector<bool>> m(g.order(), std::vector<bool>(g.order(), false));
    for (auto [u, v] : g.edges()) m[u][v] = m[v][u] = true;
    return m;
}

/// Upper-triangle bit string in column order x(0,1), x(0,2), x(1,2), ...
inline std::uint64_t column_bits(const std::vector<std::vector<bool>>& m, const std::vector<int>& perm) {
    std::uint64_t bits = 0;
    const int n = static_cast<int>(m.size());
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) bits = (bits << 1) | (m[perm[i]][perm[j]] ? 1U : 0U);
    return bits;
}

/// Lexicographically largest column string over all n! orderings (n <= 8).
inline std::uint64_t naive_canon(const Graph& g) {
    const auto m = matrix(g);
    std::vector<int> perm(g.order());
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = 0;
    do best = std::max(best, column_bits(m, perm));
    while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline bool naive_isomorphic(const Graph& a, const Graph& b) {
    return a.order() == b.order() && a.edge_count() == b.edge_count() && naive_canon(a) == naive_canon(b);
}

inline Graph from_bits(int n, std::uint64_t bits) {
    Graph g(n);
    int idx = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++idx)
            if ((bits >> idx) & 1U) g.add_edge(i, j);
    return g;
}

/// Components of the graph on `alive` by depth-first search over the adjacency matrix.
inline std::vector<int> component_sizes(const Graph& g, const std::vector<bool>& alive) {
    const auto m = matrix(g);
    const int n = g.order();
    std::vector<bool> seen(n, false);
    std::vector<int> sizes;
    for (int s = 0; s < n; ++s) {
        if (!alive[s] || seen[s]) continue;
        int size = 0;
        std::vector<int> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            ++size;
            for (int v = 0; v < n; ++v)
                if (m[u][v] && alive[v] && !seen[v]) {
                    seen[v] = true;
                    stack.push_back(v);
                }
        }
        sizes.push_back(size);
    }
    return sizes;
}

inline bool connected(const Graph& g) {
    return g.order() == 0 || component_sizes(g, std::vector<bool>(g.order(), true)).size() == 1;
}

struct OddIso {
    int odd = 0;
    int iso = 0;
};

inline OddIso odd_iso_after_removing(const Graph& g, std::uint64_t removed) {
    std::vector<bool> alive(g.order());
    for (int v = 0; v < g.order(); ++v) alive[v] = !((removed >> v) & 1U);
    OddIso r;
    for (int c : component_sizes(g, alive)) {
        if (c == 1) ++r.iso;
        else if (c % 2 == 1) ++r.odd;
    }
    return r;
}

inline int popcount(std::uint64_t s) { return __builtin_popcountll(s); }

inline long branch(const Graph& g, int k, std::uint64_t s) {
    const auto c = odd_iso_after_removing(g, s);
    return (k % 2 == 1 ? c.odd : 0) + static_cast<long>(k) * c.iso - static_cast<long>(k) * popcount(s);
}

inline std::vector<int> as_list(std::uint64_t s) {
    std::vector<int> out;
    for (int v = 0; v < 64; ++v)
        if ((s >> v) & 1U) out.push_back(v);
    return out;
}

/// (cardinality, sorted index list) order.
inline bool subset_before(std::uint64_t a, std::uint64_t b) {
    if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
    return as_list(a) < as_list(b);
}

struct Deficiency {
    long value = 0;
    std::vector<std::uint64_t> barriers;
};

inline Deficiency deficiency(const Graph& g, int k) {
    Deficiency d;
    d.value = branch(g, k, 0);
    const std::uint64_t count = std::uint64_t{1} << g.order();
    for (std::uint64_t s = 0; s < count; ++s) d.value = std::max(d.value, branch(g, k, s));
    for (std::uint64_t s = 0; s < count; ++s)
        if (branch(g, k, s) == d.value) d.barriers.push_back(s);
    std::sort(d.barriers.begin(), d.barriers.end(), subset_before);
    return d;
}

/// odd(G-S) + k i(G-S) <= k|S| - d for all nonempty S.
inline bool kd_critical(const Graph& g, int k, int d) {
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << g.order()); ++s) {
        const auto c = odd_iso_after_removing(g, s);
        if (c.odd + k * c.iso > k * popcount(s) - d) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// k-matchings by enumerating every weight vector in {0..k}^|E|.

template <class Visit>
void for_each_weighting(const Graph& g, int k, Visit&& visit) {
    const auto edges = g.edges();
    std::vector<int> w(edges.size(), 0);
    for (;;) {
        std::vector<int> load(g.order(), 0);
        for (std::size_t i = 0; i < edges.size(); ++i) {
            load[edges[i].first] += w[i];
            load[edges[i].second] += w[i];
        }
        if (std::all_of(load.begin(), load.end(), [&](int l) { return l <= k; })) visit(w, load);
        std::size_t i = 0;
        while (i < w.size() && w[i] == k) w[i++] = 0;
        if (i == w.size()) return;
        ++w[i];
    }
}

inline long mu(const Graph& g, int k) {
    long best = 0;
    for_each_weighting(g, k, [&](const std::vector<int>& w, const std::vector<int>&) {
        best = std::max(best, static_cast<long>(std::accumulate(w.begin(), w.end(), 0)));
    });
    return best;
}

inline bool exact_load_exists(const Graph& g, int k, const std::vector<int>& target) {
    bool found = false;
    for_each_weighting(g, k, [&](const std::vector<int>&, const std::vector<int>& load) {
        if (load == target) found = true;
    });
    return found;
}

// ---------------------------------------------------------------------------
// Spectra

inline double eigen_spectral_radius(const Graph& g) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.order(), g.order());
    for (auto [u, v] : g.edges()) a(u, v) = a(v, u) = 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

// ---------------------------------------------------------------------------
// Random graphs

inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

inline Graph random_connected(int n, double p, std::mt19937_64& rng) {
    for (;;) {
        Graph g = random_graph(n, p, rng);
        if (connected(g)) return g;
    }
}

inline Graph random_relabel(const Graph& g, std::mt19937_64& rng) {
    std::vector<int> perm(g.order());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Graph h(g.order());
    for (auto [u, v] : g.edges()) h.add_edge(perm[u], perm[v]);
    return h;
}

}  // namespace oracle
