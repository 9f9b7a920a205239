#pragma once

// Parameter sweeps over the comparison lemmas.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "kdlab/extremal.hpp"
#include "kdlab/graph.hpp"
#include "kdlab/harness/corpus.hpp"
#include "kdlab/harness/parallel.hpp"
#include "kdlab/harness/spec.hpp"
#include "kdlab/spectral.hpp"

namespace kdlab::harness {

/// Formula-only sweeps stop here; constructed checks stop at 64 vertices.
inline constexpr int kFormulaSweepMaxOrder = 10'000;

namespace detail {

inline json verdict_row(const ComparisonVerdict& v) {
    return {{"lemma", v.lemma},
            {"case", v.case_label},
            {"outcome", std::string(to_string(v.outcome))},
            {"margin", number_or_null(v.margin)},
            {"note", v.note}};
}

struct SweepTally {
    std::size_t holds = 0;
    std::size_t fails = 0;
    std::size_t inconclusive = 0;
    double min_margin = std::numeric_limits<double>::infinity();

    void add(const ComparisonVerdict& v) {
        if (v.outcome == Outcome::Holds) ++holds;
        else if (v.outcome == Outcome::Fails) ++fails;
        else ++inconclusive;
        min_margin = std::min(min_margin, v.margin);
    }
    void fill(SuiteReport& r) const {
        r.graphs_examined = holds + fails + inconclusive;
        r.hypothesis_satisfying = r.graphs_examined;
        r.conclusion_holds = holds;
        r.verdict = fails ? Verdict::Fail : inconclusive ? Verdict::Inconclusive : Verdict::Pass;
        if (r.graphs_examined == 0) r.verdict = Verdict::Fail;
        r.details["min_margin"] = number_or_null(min_margin);
        r.details["holds"] = holds;
        r.details["fails"] = fails;
        r.details["inconclusive"] = inconclusive;
    }
};

inline int grid_int(const json& grid, const char* key, int fallback) { return grid.value(key, fallback); }

// Nonincreasing sequences of parts >= p summing to m, with at least two parts.
inline void partitions(int m, int max_part, int p, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (m == 0) {
        if (cur.size() >= 2) out.push_back(cur);
        return;
    }
    for (int part = std::min(m, max_part); part >= p; --part) {
        cur.push_back(part);
        partitions(m - part, part, p, cur, out);
        cur.pop_back();
    }
}

inline void sweep_lemma8(const json& grid, SuiteReport& r) {
    const int dmin = grid_int(grid, "delta_min", 1);
    const int dmax = grid_int(grid, "delta_max", 5);
    const int nmax = grid_int(grid, "n_max", 40);
    if (dmin < 1 || nmax > kFormulaSweepMaxOrder) throw PreconditionError("lemma8 grid out of range");
    SweepTally tally;
    std::size_t uncovered = 0;
    std::size_t equality_mismatch = 0;
    std::size_t formula_mismatch = 0;
    json clause_counts = json::object();
    json failures = json::array();
    for (int delta = dmin; delta <= dmax; ++delta) {
        for (int n = std::max(2 * delta, 3); n <= nmax; ++n) {
            const ComparisonVerdict v = lemma8_compare(n, delta);
            tally.add(v);
            if (v.case_label == "uncovered") ++uncovered;
            clause_counts[v.case_label] = clause_counts.value(v.case_label, 0) + 1;
            // e(G_δ) = e(G_⌊n/2⌋) exactly on the clause (ii) set, whenever the two graphs differ.
            if (n / 2 > delta) {
                const bool equal = edge_count_Gs(n, delta) == edge_count_Gs(n, n / 2);
                const bool stated = n == 6 * delta + 2 || n == 6 * delta - 1;
                if (equal != stated) {
                    ++equality_mismatch;
                    failures.push_back({{"n", n}, {"delta", delta}, {"reason", "equality set"}});
                }
            }
            if (n <= kMaxOrder) {
                for (int s = delta; s <= n / 2; ++s) {
                    if (static_cast<std::int64_t>(build_Gs(n, s).edge_count()) != edge_count_Gs(n, s)) {
                        ++formula_mismatch;
                        failures.push_back({{"n", n}, {"s", s}, {"reason", "edge formula"}});
                    }
                }
            }
            if (!v.holds()) failures.push_back({{"n", n}, {"delta", delta}, {"verdict", verdict_row(v)}});
        }
    }
    tally.fill(r);
    r.details["clause_counts"] = clause_counts;
    r.details["uncovered"] = uncovered;
    r.details["equality_mismatches"] = equality_mismatch;
    r.details["formula_mismatches"] = formula_mismatch;
    r.details["failures"] = failures;
    if (uncovered || equality_mismatch || formula_mismatch) r.verdict = Verdict::Fail;
}

inline void sweep_lemma9(const json& grid, SuiteReport& r, unsigned threads) {
    const int dmin = grid_int(grid, "delta_min", 1);
    const int dmax = grid_int(grid, "delta_max", 2);
    const int extra = grid_int(grid, "n_extra", 16);
    if (dmin < 1 || 8 * dmax + 4 + extra > kMaxOrder) throw PreconditionError("lemma9 grid exceeds 64 vertices");
    std::vector<std::pair<int, int>> tuples;
    for (int delta = dmin; delta <= dmax; ++delta)
        for (int n = 8 * delta + 4; n <= 8 * delta + 4 + extra; ++n) tuples.emplace_back(n, delta);
    std::vector<ComparisonVerdict> verdicts(tuples.size());
    parallel_for(tuples.size(), threads, [&](std::size_t i) {
        verdicts[i] = lemma9_compare(tuples[i].first, tuples[i].second);
    });
    SweepTally tally;
    json rows = json::array();
    double worst_agreement = 0;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        tally.add(verdicts[i]);
        for (const auto& row : verdicts[i].rows)
            worst_agreement = std::max(worst_agreement, std::abs(*row.rho - *row.rho_closed_form));
        json jr = verdict_row(verdicts[i]);
        jr["n"] = tuples[i].first;
        jr["delta"] = tuples[i].second;
        rows.push_back(std::move(jr));
    }
    tally.fill(r);
    r.details["rows"] = rows;
    r.details["max_quotient_discrepancy"] = worst_agreement;
}

inline void sweep_lemma45(const std::string& which, const json& grid, SuiteReport& r, unsigned threads) {
    const int s_max = grid_int(grid, "s_max", 3);
    const int n_max = grid_int(grid, "n_max", 12);
    const int p_max = which == "lemma5" ? 1 : grid_int(grid, "p_max", 3);
    if (n_max > kMaxOrder) throw PreconditionError("lemma4/5 grid exceeds 64 vertices");
    struct Job {
        int s;
        int p;
        std::vector<int> parts;
    };
    std::vector<Job> jobs;
    for (int p = 1; p <= p_max; ++p) {
        for (int s = 1; s <= s_max; ++s) {
            for (int n = s + 2; n <= n_max; ++n) {
                std::vector<int> cur;
                std::vector<std::vector<int>> parts;
                partitions(n - s, n - s, p, cur, parts);
                for (auto& pt : parts) {
                    const int t = static_cast<int>(pt.size());
                    if (pt.front() < n - s - p * (t - 1)) jobs.push_back({s, p, pt});
                }
            }
        }
    }
    const bool want4 = which == "lemma4";
    std::vector<ComparisonVerdict> verdicts(jobs.size());
    parallel_for(jobs.size(), threads, [&](std::size_t i) {
        const auto both = lemma4_lemma5_check(jobs[i].s, jobs[i].parts, jobs[i].p);
        verdicts[i] = want4 ? both.lemma4 : both.lemma5;
    });
    SweepTally tally;
    json failures = json::array();
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        tally.add(verdicts[i]);
        if (!verdicts[i].holds())
            failures.push_back({{"s", jobs[i].s}, {"p", jobs[i].p}, {"parts", jobs[i].parts}, {"verdict", verdict_row(verdicts[i])}});
    }
    tally.fill(r);
    r.details["instances"] = jobs.size();
    r.details["failures"] = failures;
}

// Adding an edge to a connected graph strictly raises rho.
inline void sweep_lemma6(const json& grid, SuiteReport& r) {
    const int samples = grid_int(grid, "samples", 200);
    const int n_min = grid_int(grid, "n_min", 4);
    const int n_max = grid_int(grid, "n_max", 10);
    const auto seed = grid.value("seed", std::uint64_t{1});
    const double tol = grid.value("tol", 1e-10);
    if (n_min < 2 || n_max > kMaxOrder || n_min > n_max) throw PreconditionError("lemma6 grid out of range");
    std::mt19937_64 rng(seed);
    SweepTally tally;
    json failures = json::array();
    for (int i = 0; i < samples; ++i) {
        const int n = n_min + static_cast<int>(rng() % static_cast<std::uint64_t>(n_max - n_min + 1));
        RandomGraphSampler sampler(n, 1, rng());
        Graph g = sampler.next();
        if (g.edge_count() == static_cast<std::size_t>(n * (n - 1) / 2)) continue;
        std::vector<std::pair<int, int>> missing;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (!g.has_edge(u, v)) missing.emplace_back(u, v);
        const auto [u, v] = missing[rng() % missing.size()];
        Graph h = g;
        h.add_edge(u, v);
        ComparisonVerdict cv;
        cv.lemma = "lemma6";
        cv.case_label = "add edge";
        cv.margin = spectral_radius(h).rho - spectral_radius(g).rho;
        cv.outcome = cv.margin > tol ? Outcome::Holds : Outcome::Fails;
        tally.add(cv);
        if (!cv.holds()) failures.push_back({{"graph6", write_graph6(g)}, {"edge", {u, v}}, {"margin", cv.margin}});
    }
    tally.fill(r);
    r.details["failures"] = failures;
}

// Quotient of K_s v (K_a + m K_b) against the full spectral radius.
inline void sweep_lemma7(const json& grid, SuiteReport& r) {
    const int samples = grid_int(grid, "samples", 50);
    const auto seed = grid.value("seed", std::uint64_t{1});
    std::mt19937_64 rng(seed);
    auto uniform = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
    SweepTally tally;
    json rows = json::array();
    for (int i = 0; i < samples; ++i) {
        const int s = uniform(1, 5);
        const int a = uniform(1, 8);
        const int b = uniform(1, 5);
        const int m = uniform(1, 5);
        std::vector<int> parts{a};
        parts.insert(parts.end(), static_cast<std::size_t>(m), b);
        const Graph g = clique_join(s, parts);
        const int n = g.order();
        const std::vector<VertexSet> partition{full_set(s), full_set(s + a) & ~full_set(s), full_set(n) & ~full_set(s + a)};
        const QuotientMatrix q = quotient_matrix(g, partition);
        ComparisonVerdict cv;
        cv.lemma = "lemma7";
        cv.case_label = "equitable quotient";
        const double root = largest_root(quotient_charpoly(q));
        const double rho = spectral_radius(g).rho;
        const double gap = std::abs(root - rho);
        cv.margin = kQuotientAgreementTol - gap;
        cv.outcome = (q.equitable && gap <= kQuotientAgreementTol) ? Outcome::Holds : Outcome::Fails;
        tally.add(cv);
        rows.push_back({{"s", s}, {"a", a}, {"b", b}, {"m", m}, {"root", root}, {"rho", rho}, {"equitable", q.equitable}});
    }
    tally.fill(r);
    r.details["rows"] = rows;
}

}  // namespace detail

/// lemma4 | lemma5 | lemma6 | lemma7 | lemma8 | lemma9 over the JSON grid.
inline SuiteReport run_lemma_sweep(const std::string& which, const json& grid, unsigned threads = 0) {
    const auto t0 = std::chrono::steady_clock::now();
    if (threads == 0) threads = default_thread_count();
    SuiteReport r;
    r.suite = {{"suite", "lemma-sweep"}, {"lemma", which}, {"grid", grid}};
    if (which == "lemma8") detail::sweep_lemma8(grid, r);
    else if (which == "lemma9") detail::sweep_lemma9(grid, r, threads);
    else if (which == "lemma4" || which == "lemma5") detail::sweep_lemma45(which, grid, r, threads);
    else if (which == "lemma6") detail::sweep_lemma6(grid, r);
    else if (which == "lemma7") detail::sweep_lemma7(grid, r);
    else throw PreconditionError("unknown lemma '" + which + "'");
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline SuiteReport run_lemma_sweep(const SuiteSpec& spec) {
    SuiteReport r = run_lemma_sweep(spec.lemma, spec.grid, spec.threads);
    r.suite = suite_spec_to_json(spec);
    return r;
}

}  // namespace kdlab::harness
