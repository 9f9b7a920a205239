#pragma once

// Size and spectral theorem suites: every corpus graph meeting the hypotheses
// must have the property unless it is one of the named extremal graphs.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kdlab/canonical.hpp"
#include "kdlab/deficiency.hpp"
#include "kdlab/enumerate.hpp"
#include "kdlab/errors.hpp"
#include "kdlab/extremal.hpp"
#include "kdlab/graph.hpp"
#include "kdlab/graph6.hpp"
#include "kdlab/harness/corpus.hpp"
#include "kdlab/harness/parallel.hpp"
#include "kdlab/harness/spec.hpp"
#include "kdlab/spectral.hpp"

namespace kdlab::harness {

inline constexpr double kSpectralGuardBand = 1e-9;

enum class Condition { Size, Spectral };
enum class Target { KDCritical, GFC, GBC };

inline std::string to_string(Target t) {
    switch (t) {
        case Target::KDCritical: return "k-d-critical";
        case Target::GFC: return "GFC_k";
        case Target::GBC: return "GBC_k";
    }
    return "?";
}

struct TheoremInfo {
    std::string name;
    Condition condition = Condition::Size;
    Target target = Target::KDCritical;
    bool odd_k = true;
};

inline std::optional<TheoremInfo> theorem_info(std::string_view suite) {
    static const TheoremInfo table[] = {
        {"theorem1", Condition::Size, Target::KDCritical, true},
        {"theorem2", Condition::Spectral, Target::KDCritical, true},
        {"theorem3", Condition::Size, Target::GFC, false},
        {"theorem4", Condition::Size, Target::GBC, false},
        {"theorem5", Condition::Spectral, Target::GFC, false},
        {"theorem6", Condition::Spectral, Target::GBC, false},
        {"corollary1", Condition::Size, Target::GFC, true},
        {"corollary2", Condition::Size, Target::GBC, true},
        {"corollary3", Condition::Spectral, Target::GFC, true},
        {"corollary4", Condition::Spectral, Target::GBC, true},
    };
    for (const auto& t : table)
        if (t.name == suite) return t;
    return std::nullopt;
}

struct TheoremParams {
    int n = 0;
    int delta = 0;
    int k = 0;
    std::optional<int> d;
};

/// Range and parity constraints of the targeted statement.
inline TheoremParams validate_theorem_params(const TheoremInfo& info, const SuiteSpec& spec) {
    auto need = [&](const std::optional<int>& v, const char* name) {
        if (!v) throw PreconditionError(info.name + " requires parameter '" + name + "'");
        return *v;
    };
    TheoremParams p;
    p.n = need(spec.n, "n");
    p.delta = need(spec.delta, "delta");
    p.k = need(spec.k, "k");
    if (p.delta < 1) throw PreconditionError("delta must be positive");
    if (info.odd_k) {
        if (p.k < 3 || p.k % 2 == 0) throw PreconditionError(info.name + " requires odd k >= 3");
    } else if (p.k < 2 || p.k % 2 != 0) {
        throw PreconditionError(info.name + " requires even k >= 2");
    }
    switch (info.target) {
        case Target::KDCritical:
            p.d = need(spec.d, "d");
            if (*p.d < 1 || *p.d >= p.k) throw PreconditionError(info.name + " requires 1 <= d < k");
            if ((p.n - *p.d) % 2 != 0) throw PreconditionError(info.name + " requires n = d (mod 2)");
            if (p.n < 3) throw PreconditionError(info.name + " requires n >= 3");
            break;
        case Target::GFC:
            if (p.n < 3 || p.n % 2 == 0) throw PreconditionError(info.name + " requires odd n >= 3");
            break;
        case Target::GBC:
            if (p.n < 4 || p.n % 2 != 0) throw PreconditionError(info.name + " requires even n >= 4");
            break;
    }
    if (info.condition == Condition::Spectral && p.n < 8 * p.delta + 4)
        throw PreconditionError(info.name + " requires n >= 8*delta + 4");
    if (p.delta > p.n - 1) throw PreconditionError("no graph on n vertices has minimum degree delta");
    if (p.n > kMaxSubsetOrder)
        throw ResourceError("the deficiency oracle is limited to n <= " + std::to_string(kMaxSubsetOrder));
    return p;
}

/// Clauses of the size statement whose n-set contains n. The k-d-critical
/// statement splits at 6δ-1, 6δ, 6δ+1, 6δ+2; GFC_k at 6δ-1; GBC_k at 6δ+2.
inline std::vector<SizeClause> size_theorem_clauses(Target t, int n, int delta) {
    if (t == Target::KDCritical) return lemma8_clauses(n, delta);
    const int pivot = t == Target::GFC ? 6 * delta - 1 : 6 * delta + 2;
    if (n > pivot) return {SizeClause::I};
    if (n == pivot) return {SizeClause::II};
    return {SizeClause::III};
}

inline CriticalityVerdict check_target(const Graph& g, Target t, int k, std::optional<int> d) {
    if (t == Target::KDCritical) return is_kd_critical_deficiency(g, k, *d);
    return classify_gfc_gbc(g, k);
}

inline json vertex_list(VertexSet s) { return json(members(s)); }

struct LoadedCorpus {
    std::vector<Graph> graphs;
    bool complete = false;
    json description = json::object();
};

/// Graphs of order n for a theorem suite. Internal enumeration is complete for
/// n <= 8; larger orders need a file (e.g. geng output) or sampling.
inline LoadedCorpus load_corpus(const CorpusSpec& c, int n, int delta) {
    LoadedCorpus out;
    out.description = corpus_to_json(c);
    switch (c.source) {
        case CorpusSpec::Source::Enumerate:
            if (n > kMaxEnumerationOrder) {
                throw PreconditionError("internal enumeration covers n <= " + std::to_string(kMaxEnumerationOrder) +
                                        "; supply a graph6 file of all connected graphs on " + std::to_string(n) +
                                        " vertices with minimum degree >= " + std::to_string(delta) +
                                        " (e.g. output of `geng -c -d" + std::to_string(delta) + " " +
                                        std::to_string(n) + "`)");
            }
            out.graphs = connected_graphs(n);
            out.complete = true;
            break;
        case CorpusSpec::Source::File: {
            std::size_t other = 0;
            for (Graph& g : read_graph6_file(c.path)) {
                if (g.order() == n) out.graphs.push_back(std::move(g));
                else ++other;
            }
            if (out.graphs.empty()) {
                throw PreconditionError("corpus file '" + c.path + "' has no graphs on " + std::to_string(n) +
                                        " vertices; generate one with `geng -c -d" + std::to_string(delta) + " " +
                                        std::to_string(n) + "`");
            }
            out.description["graphs_of_other_orders"] = other;
            break;
        }
        case CorpusSpec::Source::Random: {
            if (c.inject_extremal)
                for (Graph& g : extremal_family(n)) out.graphs.push_back(std::move(g));
            out.description["injected"] = out.graphs.size();
            RandomGraphSampler sampler(n, delta, c.seed);
            for (std::size_t i = 0; i < c.count; ++i) out.graphs.push_back(sampler.next());
            for (std::size_t i = 0; i < c.dense_count; ++i) out.graphs.push_back(sampler.next_dense(c.dense_bits));
            break;
        }
    }
    out.description["complete"] = out.complete;
    return out;
}

namespace detail {

enum class Gate { WrongOrder, Disconnected, LowDegree, BelowThreshold, Band, Satisfying };

struct GraphEval {
    Gate gate = Gate::WrongOrder;
    bool holds = true;
    std::optional<VertexSet> violating;
    double rho = std::numeric_limits<double>::quiet_NaN();
    std::string note;
};

struct ExpectedGraph {
    std::string label;
    Graph graph;
    bool satisfies_hypotheses = false;
    bool present = false;
    bool found = false;
};

struct ExceptionClass {
    Graph representative;
    std::size_t count = 0;
    int expected_index = -1;
    std::optional<VertexSet> violating;
};

inline int match_expected(const Graph& g, const std::vector<ExpectedGraph>& expected) {
    for (std::size_t i = 0; i < expected.size(); ++i)
        if (are_isomorphic(g, expected[i].graph)) return static_cast<int>(i);
    return -1;
}

inline void add_expected(std::vector<ExpectedGraph>& out, std::string label, Graph g) {
    for (const auto& e : out)
        if (are_isomorphic(e.graph, g)) return;
    out.push_back({std::move(label), std::move(g)});
}

struct TheoremRun {
    TheoremRun(const TheoremInfo& i, TheoremParams params) : info(i), p(params) {}

    const TheoremInfo& info;
    TheoremParams p;
    std::vector<ExpectedGraph> expected;
    json threshold = json::object();
    json clause_info = json::object();
    bool setup_failed = false;
    std::string setup_note;
};

inline SuiteReport finish_theorem_suite(const SuiteSpec& spec, TheoremRun& run, const LoadedCorpus& corpus,
                                        const std::vector<GraphEval>& evals) {
    SuiteReport r;
    r.suite = suite_spec_to_json(spec);
    r.graphs_examined = corpus.graphs.size();

    std::size_t gate_counts[6] = {};
    std::vector<ExceptionClass> classes;
    std::vector<std::string> inconclusive;
    for (std::size_t i = 0; i < evals.size(); ++i) {
        const GraphEval& e = evals[i];
        ++gate_counts[static_cast<int>(e.gate)];
        if (e.gate == Gate::Band) {
            inconclusive.push_back(write_graph6(corpus.graphs[i]));
            continue;
        }
        if (e.gate != Gate::Satisfying) continue;
        ++r.hypothesis_satisfying;
        const int idx = match_expected(corpus.graphs[i], run.expected);
        if (idx >= 0) run.expected[static_cast<std::size_t>(idx)].present = true;
        if (e.holds) {
            ++r.conclusion_holds;
            continue;
        }
        bool merged = false;
        for (auto& c : classes) {
            if ((idx >= 0 && c.expected_index == idx) ||
                (idx < 0 && c.expected_index < 0 && are_isomorphic(c.representative, corpus.graphs[i]))) {
                ++c.count;
                merged = true;
                break;
            }
        }
        if (!merged) classes.push_back({corpus.graphs[i], 1, idx, e.violating});
        if (idx >= 0) run.expected[static_cast<std::size_t>(idx)].found = true;
    }

    json exceptions = json::array();
    bool unexpected = false;
    for (const auto& c : classes) {
        r.exceptions_found.push_back(write_graph6(c.representative));
        json row{{"graph6", write_graph6(c.representative)},
                 {"count", c.count},
                 {"expected", c.expected_index >= 0}};
        if (c.expected_index >= 0) row["matches"] = run.expected[static_cast<std::size_t>(c.expected_index)].label;
        if (c.violating) row["violating_set"] = vertex_list(*c.violating);
        exceptions.push_back(row);
        if (c.expected_index < 0) unexpected = true;
    }

    json expected_rows = json::array();
    bool expected_mismatch = false;
    for (const auto& e : run.expected) {
        if (e.satisfies_hypotheses) r.expected_exceptions.push_back(write_graph6(e.graph));
        expected_rows.push_back({{"label", e.label},
                                 {"graph6", write_graph6(e.graph)},
                                 {"satisfies_hypotheses", e.satisfies_hypotheses},
                                 {"present_in_corpus", e.present},
                                 {"found", e.found}});
        if (!e.satisfies_hypotheses) continue;
        // Present but meeting the conclusion, or missing from a complete corpus.
        if (e.present != e.found) expected_mismatch = true;
        if (corpus.complete && !e.present) expected_mismatch = true;
    }

    if (run.setup_failed || unexpected || expected_mismatch) r.verdict = Verdict::Fail;
    else if (!inconclusive.empty()) r.verdict = Verdict::Inconclusive;
    else r.verdict = Verdict::Pass;

    json counts{{"wrong_order", gate_counts[0]},
                {"disconnected", gate_counts[1]},
                {"below_min_degree", gate_counts[2]},
                {"below_threshold", gate_counts[3]},
                {"inconclusive", gate_counts[4]},
                {"hypothesis_satisfying", gate_counts[5]}};
    r.details = {{"theorem", run.info.name},
                 {"condition", run.info.condition == Condition::Size ? "size" : "spectral"},
                 {"property", to_string(run.info.target)},
                 {"threshold", run.threshold},
                 {"clause", run.clause_info},
                 {"corpus", corpus.description},
                 {"gates", counts},
                 {"exceptions", exceptions},
                 {"expected", expected_rows},
                 {"inconclusive_graphs", inconclusive}};
    if (!run.setup_note.empty()) r.details["note"] = run.setup_note;
    if (unexpected) r.details["counterexample"] = true;
    return r;
}

inline bool expected_meets_degree(const Graph& g, int delta) { return is_connected(g) && min_degree(g) >= delta; }

}  // namespace detail

/// Size statements (theorems 1, 3, 4 and corollaries 1, 2).
inline SuiteReport run_size_theorem_suite(const SuiteSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto info = theorem_info(spec.suite);
    if (!info || info->condition != Condition::Size)
        throw PreconditionError("'" + spec.suite + "' is not a size theorem suite");
    detail::TheoremRun run{*info, validate_theorem_params(*info, spec)};
    const auto& p = run.p;

    const auto clauses = size_theorem_clauses(info->target, p.n, p.delta);
    json clause_names = json::array();
    for (auto c : clauses) clause_names.push_back(std::string(to_string(c)));
    run.clause_info = {{"applicable", clause_names}};
    if (clauses.size() != 1) {
        run.setup_failed = true;
        run.setup_note = "n satisfies " + std::to_string(clauses.size()) + " clauses";
    }
    const SizeClause clause = clauses.empty() ? SizeClause::III : clauses.front();
    const Graph half = half_join(p.n);
    std::int64_t threshold = static_cast<std::int64_t>(half.edge_count());
    if (clause != SizeClause::III) {
        if (p.delta > p.n / 2) throw PreconditionError("clause requires delta <= floor(n/2)");
        threshold = edge_count_Gs(p.n, p.delta);
        detail::add_expected(run.expected, "G_delta", build_Gs(p.n, p.delta));
    }
    if (clause != SizeClause::I) detail::add_expected(run.expected, "half_join", half);
    for (auto& e : run.expected)
        e.satisfies_hypotheses =
            detail::expected_meets_degree(e.graph, p.delta) && static_cast<std::int64_t>(e.graph.edge_count()) >= threshold;
    run.threshold = {{"min_edges", threshold}};

    const LoadedCorpus corpus = load_corpus(spec.corpus, p.n, p.delta);
    std::vector<detail::GraphEval> evals(corpus.graphs.size());
    parallel_for(corpus.graphs.size(), spec.threads ? spec.threads : default_thread_count(), [&](std::size_t i) {
        const Graph& g = corpus.graphs[i];
        detail::GraphEval& e = evals[i];
        if (g.order() != p.n) return;
        if (!is_connected(g)) { e.gate = detail::Gate::Disconnected; return; }
        if (min_degree(g) < p.delta) { e.gate = detail::Gate::LowDegree; return; }
        if (static_cast<std::int64_t>(g.edge_count()) < threshold) { e.gate = detail::Gate::BelowThreshold; return; }
        e.gate = detail::Gate::Satisfying;
        const auto v = check_target(g, info->target, p.k, p.d);
        e.holds = v.holds;
        e.violating = v.violating_set;
    });

    SuiteReport r = detail::finish_theorem_suite(spec, run, corpus, evals);
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

/// Spectral statements (theorems 2, 5, 6 and corollaries 3, 4).
inline SuiteReport run_spectral_theorem_suite(const SuiteSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto info = theorem_info(spec.suite);
    if (!info || info->condition != Condition::Spectral)
        throw PreconditionError("'" + spec.suite + "' is not a spectral theorem suite");
    if (spec.corpus.source == CorpusSpec::Source::Enumerate)
        throw PreconditionError("spectral suites need n >= 12, beyond internal enumeration; use a random or graph6-file corpus");
    detail::TheoremRun run{*info, validate_theorem_params(*info, spec)};
    const auto& p = run.p;

    const Graph extremal = build_Gs(p.n, p.delta);
    const double theta = gs_spectral_radius_closed_form(p.n, p.delta);
    const double theta_iter = spectral_radius(extremal).rho;
    run.threshold = {{"rho", theta}, {"rho_iterated", theta_iter}, {"guard_band", kSpectralGuardBand}};
    if (std::abs(theta - theta_iter) > kQuotientAgreementTol) {
        run.setup_failed = true;
        run.setup_note = "closed-form and iterated threshold disagree beyond 1e-9";
    }
    run.clause_info = {{"applicable", json::array({"n >= 8delta+4"})}};
    detail::add_expected(run.expected, "G_delta", extremal);
    run.expected.front().satisfies_hypotheses = detail::expected_meets_degree(extremal, p.delta);

    const LoadedCorpus corpus = load_corpus(spec.corpus, p.n, p.delta);
    std::vector<detail::GraphEval> evals(corpus.graphs.size());
    parallel_for(corpus.graphs.size(), spec.threads ? spec.threads : default_thread_count(), [&](std::size_t i) {
        const Graph& g = corpus.graphs[i];
        detail::GraphEval& e = evals[i];
        if (g.order() != p.n) return;
        if (!is_connected(g)) { e.gate = detail::Gate::Disconnected; return; }
        if (min_degree(g) < p.delta) { e.gate = detail::Gate::LowDegree; return; }
        // rho <= Δ, so sparse graphs are settled without iterating.
        if (max_degree(g) < theta - kSpectralGuardBand) { e.gate = detail::Gate::BelowThreshold; return; }
        try {
            e.rho = spectral_radius(g).rho;
        } catch (const ConvergenceError& err) {
            e.rho = err.best_estimate().rho;
            e.gate = detail::Gate::Band;
            return;
        }
        if (e.rho < theta - kSpectralGuardBand) { e.gate = detail::Gate::BelowThreshold; return; }
        if (e.rho <= theta + kSpectralGuardBand && !are_isomorphic(g, extremal)) { e.gate = detail::Gate::Band; return; }
        e.gate = detail::Gate::Satisfying;
        const auto v = check_target(g, info->target, p.k, p.d);
        e.holds = v.holds;
        e.violating = v.violating_set;
    });

    SuiteReport r = detail::finish_theorem_suite(spec, run, corpus, evals);
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace kdlab::harness
