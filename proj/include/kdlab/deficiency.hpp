#pragma once

// Exhaustive k-Berge-Tutte deficiency, k-barriers, and the subset-inequality
// characterizations of GFC_k, GBC_k and k-d-criticality.
//
// Subsets are visited by ascending cardinality and lexicographically (by sorted
// index sequence) within a cardinality; reported witnesses are the first hit.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kdlab/errors.hpp"
#include "kdlab/graph.hpp"

namespace kdlab {

inline constexpr int kMaxSubsetOrder = 24;

enum class ParityBranch { EvenK, OddK };

inline std::string_view to_string(ParityBranch b) { return b == ParityBranch::EvenK ? "even-k" : "odd-k"; }

struct DeficiencyReport {
    int k = 0;
    long value = 0;
    ParityBranch parity_branch = ParityBranch::OddK;
    std::vector<VertexSet> barriers;
};

enum class Property { GFC, GBC, KDCritical };

inline std::string_view to_string(Property p) {
    switch (p) {
        case Property::GFC: return "GFC_k";
        case Property::GBC: return "GBC_k";
        case Property::KDCritical: return "k-d-critical";
    }
    return "?";
}

struct CriticalityVerdict {
    Property property = Property::KDCritical;
    bool holds = true;
    /// Present iff !holds. For the witness oracle it is {failing_vertex}.
    std::optional<VertexSet> violating_set;
    /// Witness oracle only: first vertex without a load-exact k-matching.
    std::optional<int> failing_vertex;
    int k = 0;
    std::optional<int> d;
};

/// Visits subsets of {0..n-1} by (cardinality, lexicographic index sequence)
/// until `visit` returns false. Returns false iff stopped early.
template <class Visit>
bool for_each_subset_ordered(int n, Visit&& visit, bool include_empty = true) {
    if (include_empty && !visit(VertexSet{0})) return false;
    std::vector<int> idx;
    for (int size = 1; size <= n; ++size) {
        idx.resize(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
        for (;;) {
            VertexSet s = 0;
            for (int v : idx) s |= singleton(v);
            if (!visit(s)) return false;
            int i = size - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - size + i) --i;
            if (i < 0) break;
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < size; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return true;
}

/// Lexicographic (cardinality, index sequence) comparison used for barrier lists.
inline bool subset_order_less(VertexSet a, VertexSet b) {
    if (set_size(a) != set_size(b)) return set_size(a) < set_size(b);
    const auto ma = members(a);
    const auto mb = members(b);
    return ma < mb;
}

/// [odd(G-S)] + k*i(G-S) - k|S|, with the odd term present only for odd k.
inline long branch_value(const Graph& g, int k, VertexSet s) {
    const ResidualCounts rc = residual_counts(g, s);
    const long odd_term = (k % 2 == 1) ? rc.odd_nontrivial : 0;
    return odd_term + static_cast<long>(k) * rc.isolated - static_cast<long>(k) * set_size(s);
}

namespace detail {
inline void check_subset_budget(const Graph& g) {
    if (g.order() > kMaxSubsetOrder) {
        throw ResourceError("exhaustive subset search limited to n <= 24 (got n = " + std::to_string(g.order()) + ")");
    }
}
inline void check_k(int k) {
    if (k < 1) throw PreconditionError("k must be positive");
}
}  // namespace detail

inline DeficiencyReport deficiency_k(const Graph& g, int k) {
    detail::check_k(k);
    detail::check_subset_budget(g);
    DeficiencyReport rep;
    rep.k = k;
    rep.parity_branch = (k % 2 == 0) ? ParityBranch::EvenK : ParityBranch::OddK;
    bool first = true;
    for_each_subset_ordered(g.order(), [&](VertexSet s) {
        const long v = branch_value(g, k, s);
        if (first || v > rep.value) {
            rep.value = v;
            rep.barriers.assign(1, s);
            first = false;
        } else if (v == rep.value) {
            rep.barriers.push_back(s);
        }
        return true;
    });
    return rep;
}

inline std::vector<VertexSet> k_barriers(const Graph& g, int k) { return deficiency_k(g, k).barriers; }

/// GFC_k / GBC_k straight from the definition: the empty set is the unique k-barrier.
inline bool only_empty_barrier(const Graph& g, int k) {
    const auto b = k_barriers(g, k);
    return b.size() == 1 && b.front() == 0;
}

namespace detail {

// First nonempty S (in subset order) with lhs(S) > k|S| - slack.
inline std::optional<VertexSet> first_violator(const Graph& g, int k, bool use_odd, long slack) {
    std::optional<VertexSet> found;
    for_each_subset_ordered(
        g.order(),
        [&](VertexSet s) {
            const ResidualCounts rc = residual_counts(g, s);
            const long lhs = (use_odd ? rc.odd_nontrivial : 0) + static_cast<long>(k) * rc.isolated;
            const long rhs = static_cast<long>(k) * set_size(s) - slack;
            if (lhs > rhs) {
                found = s;
                return false;
            }
            return true;
        },
        /*include_empty=*/false);
    return found;
}

}  // namespace detail

/// Inequality test for GFC_k (odd order) or GBC_k (even order):
///   k even:          i(G-S) <= |S| - 1
///   k odd, n odd:    odd(G-S) + k i(G-S) <= k|S| - 1
///   k odd, n even:   odd(G-S) + k i(G-S) <= k|S| - 2
/// for every nonempty S.
inline CriticalityVerdict classify_gfc_gbc(const Graph& g, int k) {
    if (k < 2) throw PreconditionError("classify_gfc_gbc requires k >= 2");
    if (g.order() < 3) throw PreconditionError("classify_gfc_gbc requires n >= 3");
    if (!is_connected(g)) throw PreconditionError("classify_gfc_gbc requires a connected graph");
    detail::check_subset_budget(g);

    CriticalityVerdict v;
    v.k = k;
    v.property = (g.order() % 2 == 1) ? Property::GFC : Property::GBC;
    std::optional<VertexSet> bad;
    if (k % 2 == 0) {
        // i <= |S| - 1  <=>  k*i <= k|S| - k
        bad = detail::first_violator(g, k, false, k);
    } else {
        bad = detail::first_violator(g, k, true, g.order() % 2 == 1 ? 1 : 2);
    }
    v.holds = !bad.has_value();
    v.violating_set = bad;
    return v;
}

namespace detail {
inline void check_kd_params(const Graph& g, int k, int d) {
    if (k < 3 || k % 2 == 0) throw PreconditionError("k-d-criticality requires odd k >= 3");
    if (d < 1 || d > k) throw PreconditionError("k-d-criticality requires 1 <= d <= k");
    if ((g.order() - d) % 2 != 0) throw PreconditionError("k-d-criticality requires n = d (mod 2)");
    if (g.order() < 3) throw PreconditionError("k-d-criticality requires n >= 3");
}
}  // namespace detail

/// odd(G-S) + k i(G-S) <= k|S| - d for every nonempty S.
inline CriticalityVerdict is_kd_critical_deficiency(const Graph& g, int k, int d) {
    detail::check_kd_params(g, k, d);
    detail::check_subset_budget(g);
    CriticalityVerdict v;
    v.property = Property::KDCritical;
    v.k = k;
    v.d = d;
    v.violating_set = detail::first_violator(g, k, true, d);
    v.holds = !v.violating_set.has_value();
    return v;
}

}  // namespace kdlab
