#pragma once

// The graphs named in the "unless" clauses must fail the property, and the
// first violating set must be the join clique (or the join side).

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "kdlab/deficiency.hpp"
#include "kdlab/extremal.hpp"
#include "kdlab/graph.hpp"
#include "kdlab/graph6.hpp"
#include "kdlab/harness/parallel.hpp"
#include "kdlab/harness/spec.hpp"
#include "kdlab/harness/theorems.hpp"
#include "kdlab/kmatching.hpp"

namespace kdlab::harness {

struct SharpnessCase {
    std::string statement;
    Target target = Target::KDCritical;
    int n = 0;
    int delta = 0;
    int k = 0;
    std::optional<int> d;
    std::string clause;
    std::string label;  // "G_delta" or "half_join"
    Graph graph;
    VertexSet expected_set = 0;
};

namespace detail {

inline SharpnessCase make_case(std::string statement, Target target, int n, int delta, int k, std::optional<int> d = {}) {
    SharpnessCase c;
    c.statement = std::move(statement);
    c.target = target;
    c.n = n;
    c.delta = delta;
    c.k = k;
    c.d = d;
    return c;
}

inline std::vector<int> pick_d(int n, int k, const std::string& rule) {
    std::vector<int> ds;
    for (int d = 1; d < k; ++d)
        if ((n - d) % 2 == 0) ds.push_back(d);
    if (ds.empty() || rule == "all") return ds;
    if (rule == "min") return {ds.front()};
    if (rule == "max") return {ds.back()};
    throw PreconditionError("d_rule must be one of all, min, max");
}

inline void add_named_graphs(std::vector<SharpnessCase>& out, SharpnessCase base, SizeClause clause) {
    base.clause = std::string(to_string(clause));
    if (clause != SizeClause::III && base.delta <= base.n / 2) {
        SharpnessCase c = base;
        c.label = "G_delta";
        c.graph = build_Gs(c.n, c.delta);
        c.expected_set = full_set(c.delta);
        out.push_back(std::move(c));
    }
    if (clause != SizeClause::I) {
        SharpnessCase c = base;
        c.label = "half_join";
        c.graph = half_join(c.n);
        c.expected_set = full_set(c.n / 2);
        out.push_back(std::move(c));
    }
}

}  // namespace detail

/// Every (statement, n, δ, k[, d]) instance in the grid with its named graphs.
inline std::vector<SharpnessCase> sharpness_cases(std::pair<int, int> delta_range, std::pair<int, int> n_range,
                                                  const std::vector<int>& k_set, const std::string& d_rule) {
    std::vector<SharpnessCase> out;
    for (int delta = delta_range.first; delta <= delta_range.second; ++delta) {
        if (delta < 1) throw PreconditionError("delta must be positive");
        for (int n = std::max(3, n_range.first); n <= n_range.second; ++n) {
            if (n > kMaxSubsetOrder) throw ResourceError("sharpness grid exceeds the deficiency oracle's n <= 24");
            for (int k : k_set) {
                if (k < 2) throw PreconditionError("k must be at least 2");
                const Target parity_target = n % 2 == 1 ? Target::GFC : Target::GBC;
                if (parity_target == Target::GBC && n < 4) continue;
                if (k % 2 == 1) {
                    for (int d : detail::pick_d(n, k, d_rule)) {
                        const auto clauses = size_theorem_clauses(Target::KDCritical, n, delta);
                        if (clauses.size() != 1) continue;
                        detail::add_named_graphs(out, detail::make_case("theorem1", Target::KDCritical, n, delta, k, d),
                                                 clauses.front());
                    }
                    const auto clause = size_theorem_clauses(parity_target, n, delta).front();
                    detail::add_named_graphs(
                        out, detail::make_case(parity_target == Target::GFC ? "corollary1" : "corollary2", parity_target, n, delta, k),
                        clause);
                } else {
                    const auto clause = size_theorem_clauses(parity_target, n, delta).front();
                    detail::add_named_graphs(
                        out, detail::make_case(parity_target == Target::GFC ? "theorem3" : "theorem4", parity_target, n, delta, k),
                        clause);
                }
            }
        }
    }
    return out;
}

inline SuiteReport run_sharpness_suite(const SuiteSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cases = sharpness_cases(spec.delta_range, spec.n_range, spec.k_set, spec.d_rule);

    struct Outcome {
        bool fails_deficiency = false;
        std::optional<VertexSet> violating;
        std::optional<bool> fails_second;  // absent when over budget
        bool meets_degree = false;
    };
    std::vector<Outcome> outcomes(cases.size());
    parallel_for(cases.size(), spec.threads ? spec.threads : default_thread_count(), [&](std::size_t i) {
        const SharpnessCase& c = cases[i];
        Outcome& o = outcomes[i];
        o.meets_degree = min_degree(c.graph) >= c.delta;
        const auto v = check_target(c.graph, c.target, c.k, c.d);
        o.fails_deficiency = !v.holds;
        o.violating = v.violating_set;
        if (c.target == Target::KDCritical) {
            if (c.n <= spec.witness_max_order && within_matching_budget(c.n, c.k))
                o.fails_second = !is_kd_critical_witness(c.graph, c.k, *c.d).holds;
        } else {
            o.fails_second = !only_empty_barrier(c.graph, c.k);
        }
    });

    SuiteReport r;
    r.suite = suite_spec_to_json(spec);
    json rows = json::array();
    std::size_t second_oracle_runs = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const SharpnessCase& c = cases[i];
        const Outcome& o = outcomes[i];
        ++r.graphs_examined;
        if (o.meets_degree) ++r.hypothesis_satisfying;
        const bool ok = o.fails_deficiency && o.violating == c.expected_set && o.fails_second.value_or(true);
        if (o.fails_second) ++second_oracle_runs;
        json row{{"statement", c.statement}, {"n", c.n},         {"delta", c.delta},
                 {"k", c.k},                 {"clause", c.clause}, {"graph", c.label},
                 {"graph6", write_graph6(c.graph)}, {"fails_property", o.fails_deficiency},
                 {"expected_set", vertex_list(c.expected_set)}, {"ok", ok}};
        if (c.d) row["d"] = *c.d;
        if (o.violating) row["violating_set"] = vertex_list(*o.violating);
        row["second_oracle_fails"] = o.fails_second ? json(*o.fails_second) : json(nullptr);
        rows.push_back(std::move(row));
        if (ok) ++r.conclusion_holds;
        else r.exceptions_found.push_back(write_graph6(c.graph));
    }
    r.verdict = (!cases.empty() && r.exceptions_found.empty()) ? Verdict::Pass : Verdict::Fail;
    r.details = {{"cases", rows}, {"second_oracle_runs", second_oracle_runs}};
    if (cases.empty()) r.details["note"] = "empty grid";
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace kdlab::harness
