#pragma once

// The extremal family G_s = K_s v (K_{n-2s} + K̄_s), its closed-form size and
// spectral radius, and decision procedures for the comparison lemmas.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kdlab/errors.hpp"
#include "kdlab/graph.hpp"
#include "kdlab/spectral.hpp"

namespace kdlab {

struct ExtremalParams {
    int n = 0;
    int delta = 0;
    int s = 0;
};

inline void check_gs_params(int n, int s) {
    if (n < 2 || n > kMaxOrder) throw PreconditionError("G_s requires 2 <= n <= 64");
    if (s < 1 || s > n / 2) throw PreconditionError("G_s requires 1 <= s <= floor(n/2)");
}

/// Vertex layout: 0..s-1 join clique K_s, s..n-s-1 clique K_{n-2s}, n-s..n-1 independent K̄_s.
inline Graph build_Gs(int n, int s) {
    check_gs_params(n, s);
    return join(complete_graph(s), disjoint_union(complete_graph(n - 2 * s), empty_graph(s)));
}

/// K_{floor(n/2)} v K̄_{ceil(n/2)}; equal to G_{floor(n/2)}.
inline Graph half_join(int n) { return join(complete_graph(n / 2), empty_graph(n - n / 2)); }

/// K_s v (K_{n_1} + ... + K_{n_t}).
inline Graph clique_join(int s, const std::vector<int>& parts) {
    Graph inner(0);
    for (int p : parts) inner = disjoint_union(inner, complete_graph(p));
    return join(complete_graph(s), inner);
}

inline std::vector<VertexSet> gs_partition(int n, int s) {
    check_gs_params(n, s);
    std::vector<VertexSet> parts{full_set(s)};
    if (n - 2 * s > 0) parts.push_back(full_set(n - s) & ~full_set(s));
    parts.push_back(full_set(n) & ~full_set(n - s));
    return parts;
}

/// e(G_s) = 3s^2/2 + (1/2 - n)s + (n^2 - n)/2.
inline std::int64_t edge_count_Gs(std::int64_t n, std::int64_t s) {
    if (n < 2 || s < 1 || 2 * s > n) throw PreconditionError("edge_count_Gs requires 1 <= s <= floor(n/2)");
    const std::int64_t twice = 3 * s * s + s - 2 * n * s + n * n - n;
    if (twice < 0 || twice % 2 != 0) throw std::logic_error("e(G_s) formula produced a non-integer");
    return twice / 2;
}

/// rho(G_s) as the largest root of its equitable quotient's characteristic polynomial.
inline double gs_spectral_radius_closed_form(std::int64_t n, std::int64_t s) {
    if (2 * s == n) return largest_root(charpoly_tilde(n));
    return largest_root(charpoly_fs(n, s));
}

// ---------------------------------------------------------------------------
// Comparison verdicts

enum class Outcome { Holds, Fails, Inconclusive };

inline std::string_view to_string(Outcome o) {
    switch (o) {
        case Outcome::Holds: return "holds";
        case Outcome::Fails: return "fails";
        case Outcome::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct ComparisonRow {
    int s = 0;
    std::int64_t edges = 0;
    std::optional<double> rho;
    std::optional<double> rho_closed_form;
};

struct ComparisonVerdict {
    std::string lemma;
    std::string case_label;
    Outcome outcome = Outcome::Holds;
    /// Smallest slack of the strict inequalities checked; +inf when none applied.
    double margin = std::numeric_limits<double>::infinity();
    std::vector<ComparisonRow> rows;
    std::string note;

    bool holds() const { return outcome == Outcome::Holds; }
};

enum class SizeClause { I, II, III };

inline std::string_view to_string(SizeClause c) {
    switch (c) {
        case SizeClause::I: return "(i)";
        case SizeClause::II: return "(ii)";
        case SizeClause::III: return "(iii)";
    }
    return "?";
}

/// Clauses whose stated n-set contains n (for the edge-count comparison and the
/// k-d-critical size theorem):
///   (i)   n > 6δ+2 or n = 6δ+1
///   (ii)  n = 6δ+2 or n = 6δ-1
///   (iii) n < 6δ-1 or n = 6δ
inline std::vector<SizeClause> lemma8_clauses(int n, int delta) {
    std::vector<SizeClause> out;
    if (n > 6 * delta + 2 || n == 6 * delta + 1) out.push_back(SizeClause::I);
    if (n == 6 * delta + 2 || n == 6 * delta - 1) out.push_back(SizeClause::II);
    if (n < 6 * delta - 1 || n == 6 * delta) out.push_back(SizeClause::III);
    return out;
}

inline ComparisonVerdict lemma8_compare(int n, int delta) {
    if (delta < 1 || delta > n / 2) throw PreconditionError("lemma8_compare requires 1 <= delta <= floor(n/2)");
    ComparisonVerdict v;
    v.lemma = "lemma8";
    const int half = n / 2;
    for (int s = delta; s <= half; ++s) v.rows.push_back({s, edge_count_Gs(n, s), std::nullopt, std::nullopt});
    auto e = [&](int s) { return edge_count_Gs(n, s); };

    const auto clauses = lemma8_clauses(n, delta);
    if (clauses.size() != 1) {
        v.outcome = Outcome::Fails;
        v.case_label = "uncovered";
        v.note = "n = " + std::to_string(n) + " lies in " + std::to_string(clauses.size()) + " clauses";
        return v;
    }
    v.case_label = std::string(to_string(clauses.front()));
    bool ok = true;
    auto strictly_above = [&](std::int64_t top, std::int64_t other) {
        v.margin = std::min(v.margin, static_cast<double>(top - other));
        if (top <= other) ok = false;
    };
    switch (clauses.front()) {
        case SizeClause::I:
            for (int s = delta + 1; s <= half; ++s) strictly_above(e(delta), e(s));
            break;
        case SizeClause::II:
            if (e(delta) != e(half)) {
                ok = false;
                v.note = "e(G_delta) != e(G_floor(n/2))";
            }
            for (int s = delta + 1; s < half; ++s) strictly_above(e(delta), e(s));
            break;
        case SizeClause::III:
            for (int s = delta; s < half; ++s) strictly_above(e(half), e(s));
            break;
    }
    v.outcome = ok ? Outcome::Holds : Outcome::Fails;
    return v;
}

inline constexpr double kQuotientAgreementTol = 1e-9;

/// rho(G_delta) > rho(G_s) for delta < s <= floor(n/2), requires n >= 8 delta + 4.
/// Iterated and closed-form radii must agree to 1e-9 before comparing.
inline ComparisonVerdict lemma9_compare(int n, int delta, double tol = 1e-9) {
    if (delta < 1 || n < 8 * delta + 4) throw PreconditionError("lemma9_compare requires n >= 8*delta + 4");
    ComparisonVerdict v;
    v.lemma = "lemma9";
    v.case_label = "n >= 8delta+4";
    bool consistent = true;
    for (int s = delta; s <= n / 2; ++s) {
        const double iter = spectral_radius(build_Gs(n, s)).rho;
        const double closed = gs_spectral_radius_closed_form(n, s);
        if (std::abs(iter - closed) > kQuotientAgreementTol) consistent = false;
        v.rows.push_back({s, edge_count_Gs(n, s), iter, closed});
    }
    if (!consistent) {
        v.outcome = Outcome::Fails;
        v.note = "power iteration and quotient root disagree beyond 1e-9";
        return v;
    }
    const double top = *v.rows.front().rho;
    for (std::size_t i = 1; i < v.rows.size(); ++i) v.margin = std::min(v.margin, top - *v.rows[i].rho);
    if (v.margin > tol) v.outcome = Outcome::Holds;
    else if (v.margin < -tol) v.outcome = Outcome::Fails;
    else v.outcome = Outcome::Inconclusive;
    return v;
}

struct Lemma45Verdicts {
    ComparisonVerdict lemma4;
    ComparisonVerdict lemma5;
};

/// Compares K_s v (K_{n_1}+...+K_{n_t}) with K_s v (K_{n-s-p(t-1)} + (t-1)K_p) by size
/// and with K_s v (K_{n-s-t+1} + (t-1)K_1) by spectral radius.
/// Requires s >= 1, n_1 >= ... >= n_t >= p >= 1 and n_1 < n - s - p(t-1).
inline Lemma45Verdicts lemma4_lemma5_check(int s, const std::vector<int>& parts, int p, double tol = 1e-9) {
    if (s < 1) throw PreconditionError("lemma 4/5 check requires s >= 1");
    if (parts.empty()) throw PreconditionError("lemma 4/5 check requires at least one part");
    if (p < 1) throw PreconditionError("lemma 4/5 check requires p >= 1");
    if (!std::is_sorted(parts.begin(), parts.end(), std::greater<>()))
        throw PreconditionError("parts must be nonincreasing");
    if (parts.back() < p) throw PreconditionError("every part must be at least p");
    const int t = static_cast<int>(parts.size());
    const int n = s + std::accumulate(parts.begin(), parts.end(), 0);
    if (n > kMaxOrder) throw PreconditionError("lemma 4/5 graphs exceed 64 vertices");
    if (parts.front() >= n - s - p * (t - 1)) throw PreconditionError("requires n_1 < n - s - p(t-1)");

    const Graph base = clique_join(s, parts);
    Lemma45Verdicts out;

    std::vector<int> size_parts{n - s - p * (t - 1)};
    size_parts.insert(size_parts.end(), static_cast<std::size_t>(t - 1), p);
    const auto e_base = static_cast<std::int64_t>(base.edge_count());
    const auto e_big = static_cast<std::int64_t>(clique_join(s, size_parts).edge_count());
    out.lemma4.lemma = "lemma4";
    out.lemma4.case_label = "p=" + std::to_string(p);
    out.lemma4.margin = static_cast<double>(e_big - e_base);
    out.lemma4.outcome = e_big > e_base ? Outcome::Holds : Outcome::Fails;

    std::vector<int> rho_parts{n - s - t + 1};
    rho_parts.insert(rho_parts.end(), static_cast<std::size_t>(t - 1), 1);
    const double r_base = spectral_radius(base).rho;
    const double r_big = spectral_radius(clique_join(s, rho_parts)).rho;
    out.lemma5.lemma = "lemma5";
    out.lemma5.case_label = "p=1";
    out.lemma5.margin = r_big - r_base;
    if (out.lemma5.margin > tol) out.lemma5.outcome = Outcome::Holds;
    else if (out.lemma5.margin < -tol) out.lemma5.outcome = Outcome::Fails;
    else out.lemma5.outcome = Outcome::Inconclusive;
    return out;
}

}  // namespace kdlab
