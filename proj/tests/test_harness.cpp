#include <filesystem>
#include <fstream>
#include <set>

#include <gtest/gtest.h>

#include "kdlab/canonical.hpp"
#include "kdlab/extremal.hpp"
#include "kdlab/graph6.hpp"
#include "kdlab/harness/report.hpp"
#include "kdlab/harness/run.hpp"

using namespace kdlab;
using namespace kdlab::harness;

namespace {

SuiteReport run(const std::string& text) { return run_suite(suite_spec_from_json(json::parse(text))); }

std::set<std::string> canonical_g6(const std::vector<std::string>& g6s) {
    std::set<std::string> out;
    for (const auto& s : g6s) out.insert(write_graph6(canonical_graph(parse_graph6(s))));
    return out;
}

std::string canon(const Graph& g) { return write_graph6(canonical_graph(g)); }

// Every unlabelled graph on n vertices with at most max_edges edges, by edge augmentation.
std::vector<Graph> sparse_graphs(int n, int max_edges) {
    std::vector<Graph> all{Graph(n)};
    std::vector<Graph> level{Graph(n)};
    for (int m = 1; m <= max_edges; ++m) {
        std::set<std::uint64_t> seen;
        std::vector<Graph> next;
        for (const Graph& g : level)
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) {
                    if (g.has_edge(u, v)) continue;
                    Graph h = g;
                    h.add_edge(u, v);
                    if (seen.insert(canonical_form(h).pack()).second) next.push_back(canonical_graph(h));
                }
        all.insert(all.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return all;
}

}  // namespace

TEST(Validation, RejectsBadParameters) {
    EXPECT_THROW(run(R"({"suite":"theorem1","n":7,"delta":1,"k":3})"), PreconditionError);
    EXPECT_THROW(run(R"({"suite":"theorem1","n":7,"delta":1,"k":3,"d":3})"), PreconditionError);
    EXPECT_THROW(run(R"({"suite":"theorem1","n":7,"delta":1,"k":3,"d":2})"), PreconditionError);
    EXPECT_THROW(run(R"({"suite":"theorem1","n":7,"delta":1,"k":2,"d":1})"), PreconditionError);
    EXPECT_THROW(run(R"({"suite":"theorem3","n":8,"delta":1,"k":2})"), PreconditionError);
    EXPECT_THROW(run(R"({"suite":"theorem4","n":7,"delta":1,"k":2})"), PreconditionError);
    EXPECT_THROW(run(R"({"suite":"theorem4","n":8,"delta":1,"k":3})"), PreconditionError);
    EXPECT_THROW(run(R"({"suite":"theorem2","n":11,"delta":1,"k":3,"d":1,"corpus":{"type":"random","count":1}})"),
                 PreconditionError);
    EXPECT_THROW(run(R"({"suite":"theorem1","n":25,"delta":1,"k":3,"d":1})"), ResourceError);
    EXPECT_THROW(run(R"({"suite":"theorem1","n":9,"delta":1,"k":3,"d":1})"), PreconditionError);
    EXPECT_THROW(run(R"({"suite":"theorem6","n":12,"delta":1,"k":2})"), PreconditionError);
    EXPECT_THROW(run(R"({"suite":"nonsense"})"), PreconditionError);
    EXPECT_THROW(run(R"({"suite":"theorem1","n":7,"delta":1,"k":3,"d":1,"corpus":{"type":"bogus"}})"), PreconditionError);
}

TEST(Validation, EnumerationRefusalNamesGenerator) {
    try {
        run(R"({"suite":"theorem3","n":9,"delta":2,"k":2})");
        FAIL() << "expected a refusal";
    } catch (const PreconditionError& e) {
        EXPECT_NE(std::string(e.what()).find("geng"), std::string::npos);
    }
}

TEST(SizeSuite, Theorem1OnSevenVertices) {
    const auto r = run(R"({"suite":"theorem1","n":7,"delta":1,"k":3,"d":1})");
    EXPECT_EQ(r.verdict, Verdict::Pass);
    EXPECT_EQ(r.graphs_examined, 853U);
    EXPECT_EQ(canonical_g6(r.exceptions_found), std::set<std::string>{canon(build_Gs(7, 1))});
    EXPECT_EQ(canonical_g6(r.expected_exceptions), std::set<std::string>{canon(build_Gs(7, 1))});
    EXPECT_EQ(r.details["clause"]["applicable"], json::array({"(i)"}));
    EXPECT_EQ(r.details["threshold"]["min_edges"], 16);
    EXPECT_EQ(r.hypothesis_satisfying, r.conclusion_holds + 1);
}

TEST(SizeSuite, Theorem4OnEightVertices) {
    const auto r = run(R"({"suite":"theorem4","n":8,"delta":1,"k":2})");
    EXPECT_EQ(r.verdict, Verdict::Pass);
    EXPECT_EQ(r.graphs_examined, 11117U);
    const std::set<std::string> want{canon(build_Gs(8, 1)), canon(half_join(8))};
    EXPECT_EQ(canonical_g6(r.exceptions_found), want);
    EXPECT_EQ(r.details["threshold"]["min_edges"], 22);
}

TEST(SizeSuite, Theorem3FromIngestedCorpus) {
    // Connected graphs on 9 vertices with at least 26 edges are complements of
    // graphs with at most 10 edges.
    const auto path = std::filesystem::path(testing::TempDir()) / "kdlab_dense9.g6";
    {
        std::ofstream out(path);
        for (const Graph& g : sparse_graphs(9, 10)) out << write_graph6(complement(g)) << '\n';
    }
    const json spec{{"suite", "theorem3"}, {"n", 9}, {"delta", 2}, {"k", 2},
                    {"corpus", {{"type", "graph6-file"}, {"path", path.string()}}}};
    const auto r = run_suite(suite_spec_from_json(spec));
    EXPECT_EQ(r.verdict, Verdict::Pass) << dump_report(r);
    EXPECT_EQ(r.details["threshold"]["min_edges"], 26);
    EXPECT_EQ(canonical_g6(r.exceptions_found), std::set<std::string>{canon(half_join(9))});
    EXPECT_GT(r.hypothesis_satisfying, 1U);
    std::filesystem::remove(path);
}

TEST(SizeSuite, MissingFileAndWrongOrderAreRefused) {
    EXPECT_THROW(run(R"({"suite":"theorem3","n":9,"delta":2,"k":2,"corpus":{"type":"graph6-file","path":"/nonexistent.g6"}})"),
                 std::exception);
    const auto path = std::filesystem::path(testing::TempDir()) / "kdlab_k3.g6";
    { std::ofstream(path) << "Bw\n"; }
    const json spec{{"suite", "theorem3"}, {"n", 9}, {"delta", 2}, {"k", 2},
                    {"corpus", {{"type", "graph6-file"}, {"path", path.string()}}}};
    EXPECT_THROW(run_suite(suite_spec_from_json(spec)), PreconditionError);
    std::filesystem::remove(path);
}

namespace {

struct VerdictFixture {
    TheoremInfo info = *theorem_info("theorem4");
    SuiteSpec spec = suite_spec_from_json(json{{"suite", "theorem4"}, {"n", 8}, {"delta", 1}, {"k", 2}});
    harness::detail::TheoremRun theorem{info, validate_theorem_params(info, spec)};
    LoadedCorpus corpus;

    VerdictFixture() {
        harness::detail::add_expected(theorem.expected, "G_delta", build_Gs(8, 1));
        theorem.expected.back().satisfies_hypotheses = true;
    }

    SuiteReport finish(const std::vector<harness::detail::GraphEval>& evals) {
        return harness::detail::finish_theorem_suite(spec, theorem, corpus, evals);
    }
};

harness::detail::GraphEval satisfying(bool holds) {
    harness::detail::GraphEval e;
    e.gate = harness::detail::Gate::Satisfying;
    e.holds = holds;
    if (!holds) e.violating = singleton(0);
    return e;
}

}  // namespace

TEST(VerdictRules, UnexpectedViolatorFails) {
    VerdictFixture f;
    f.corpus.graphs = {build_Gs(8, 1), complete_graph(8)};
    const auto r = f.finish({satisfying(false), satisfying(false)});
    EXPECT_EQ(r.verdict, Verdict::Fail);
    EXPECT_TRUE(r.details.value("counterexample", false));
    EXPECT_EQ(r.exceptions_found.size(), 2U);
}

TEST(VerdictRules, ExpectedGraphMeetingConclusionFails) {
    VerdictFixture f;
    f.corpus.graphs = {build_Gs(8, 1)};
    EXPECT_EQ(f.finish({satisfying(true)}).verdict, Verdict::Fail);
}

TEST(VerdictRules, CompleteCorpusMissingExpectedFails) {
    VerdictFixture f;
    f.corpus.graphs = {complete_graph(8)};
    f.corpus.complete = true;
    EXPECT_EQ(f.finish({satisfying(true)}).verdict, Verdict::Fail);
    VerdictFixture g;
    g.corpus.graphs = {complete_graph(8)};
    EXPECT_EQ(g.finish({satisfying(true)}).verdict, Verdict::Pass);
}

TEST(VerdictRules, BandGraphsAreInconclusive) {
    VerdictFixture f;
    harness::detail::GraphEval band;
    band.gate = harness::detail::Gate::Band;
    f.corpus.graphs = {build_Gs(8, 1), complete_graph(8)};
    const auto r = f.finish({satisfying(false), band});
    EXPECT_EQ(r.verdict, Verdict::Inconclusive);
    EXPECT_EQ(r.details["inconclusive_graphs"].size(), 1U);
}

TEST(VerdictRules, SetupFailureFails) {
    VerdictFixture f;
    f.theorem.setup_failed = true;
    f.corpus.graphs = {build_Gs(8, 1)};
    EXPECT_EQ(f.finish({satisfying(false)}).verdict, Verdict::Fail);
}

TEST(VerdictRules, IsomorphicViolatorsShareAClass) {
    VerdictFixture f;
    Graph relabelled(8);
    for (auto [u, v] : build_Gs(8, 1).edges()) relabelled.add_edge(7 - u, 7 - v);
    f.corpus.graphs = {build_Gs(8, 1), relabelled};
    const auto r = f.finish({satisfying(false), satisfying(false)});
    EXPECT_EQ(r.verdict, Verdict::Pass);
    ASSERT_EQ(r.exceptions_found.size(), 1U);
    EXPECT_EQ(r.details["exceptions"][0]["count"], 2);
}

TEST(Determinism, ReportsAreStableAcrossThreadCounts) {
    const std::string base = R"({"suite":"theorem1","n":7,"delta":1,"k":3,"d":1)";
    const auto a = run(base + R"(,"threads":1})");
    const auto b = run(base + R"(,"threads":2})");
    const auto c = run(base + "}");
    EXPECT_EQ(dump_report(a, false), dump_report(b, false));
    EXPECT_EQ(dump_report(a, false), dump_report(c, false));
    EXPECT_FALSE(report_to_json(a)["suite"].contains("threads"));

    const std::string spectral =
        R"({"suite":"theorem2","n":12,"delta":1,"k":3,"d":2,"corpus":{"type":"random","count":300,"seed":7})";
    EXPECT_EQ(dump_report(run(spectral + R"(,"threads":1})"), false), dump_report(run(spectral + R"(,"threads":2})"), false));
}

TEST(SpectralSuite, Theorem6OnExtremalFamily) {
    const auto r = run(R"({"suite":"theorem6","n":12,"delta":1,"k":2,"corpus":{"type":"random","count":0}})");
    EXPECT_EQ(r.verdict, Verdict::Pass) << dump_report(r);
    EXPECT_EQ(r.graphs_examined, 6U);
    EXPECT_EQ(r.hypothesis_satisfying, 1U);
    EXPECT_EQ(canonical_g6(r.exceptions_found), std::set<std::string>{canon(build_Gs(12, 1))});
    EXPECT_EQ(r.details["gates"]["below_threshold"], 5);
}

TEST(SpectralSuite, Theorem2WithSamples) {
    const auto r = run(R"({"suite":"theorem2","n":12,"delta":1,"k":3,"d":2,"corpus":{"type":"random","count":500,"seed":1}})");
    EXPECT_EQ(r.verdict, Verdict::Pass) << dump_report(r);
    EXPECT_EQ(r.graphs_examined, 506U);
    EXPECT_EQ(canonical_g6(r.exceptions_found), std::set<std::string>{canon(build_Gs(12, 1))});
}

TEST(SpectralSuite, DenseSamplesSatisfyHypotheses) {
    const auto r = run(
        R"({"suite":"theorem5","n":13,"delta":1,"k":2,"corpus":{"type":"random","count":0,"dense_count":200,"dense_bits":3,"seed":3}})");
    EXPECT_EQ(r.verdict, Verdict::Pass) << dump_report(r);
    EXPECT_GT(r.hypothesis_satisfying, 10U);
}

TEST(Sharpness, SmallGrid) {
    const auto r = run(R"({"suite":"sharpness","delta_range":[1,2],"n_range":[5,12],"k_set":[2,3,5]})");
    EXPECT_EQ(r.verdict, Verdict::Pass) << dump_report(r);
    EXPECT_GT(r.graphs_examined, 0U);
    EXPECT_EQ(r.conclusion_holds, r.graphs_examined);
}

TEST(Sharpness, CaseExamples) {
    const auto cases = sharpness_cases({1, 1}, {7, 8}, {2, 3}, "all");
    bool saw_g17 = false, saw_g18 = false, saw_half8 = false;
    for (const auto& c : cases) {
        const auto v = check_target(c.graph, c.target, c.k, c.d);
        EXPECT_FALSE(v.holds);
        EXPECT_EQ(v.violating_set, c.expected_set);
        if (c.statement == "theorem1" && c.n == 7 && c.label == "G_delta") {
            saw_g17 = true;
            EXPECT_EQ(c.expected_set, singleton(0));
        }
        if (c.statement == "theorem4" && c.n == 8 && c.label == "G_delta") saw_g18 = true;
        if (c.statement == "theorem4" && c.n == 8 && c.label == "half_join") {
            saw_half8 = true;
            EXPECT_EQ(c.expected_set, full_set(4));
        }
    }
    EXPECT_TRUE(saw_g17);
    EXPECT_TRUE(saw_g18);
    EXPECT_TRUE(saw_half8);
}

TEST(OracleEquivalence, UpToFiveVertices) {
    const auto r = run(R"({"suite":"oracle-equivalence","k":3,"n_max":5})");
    EXPECT_EQ(r.verdict, Verdict::Pass);
    EXPECT_EQ(r.graphs_examined, 2U + 6U + 21U);
    EXPECT_EQ(r.conclusion_holds, r.hypothesis_satisfying);
    EXPECT_TRUE(r.details["divergences"].empty());
    EXPECT_THROW(run(R"({"suite":"oracle-equivalence","k":3,"n_max":9})"), PreconditionError);
    EXPECT_THROW(run(R"({"suite":"oracle-equivalence","k":2,"n_max":5})"), PreconditionError);
}

TEST(Sweeps, AllLemmasPassOnSmallGrids) {
    EXPECT_EQ(run_lemma_sweep("lemma8", json::object()).verdict, Verdict::Pass);
    EXPECT_EQ(run_lemma_sweep("lemma9", json{{"delta_max", 1}, {"n_extra", 4}}).verdict, Verdict::Pass);
    EXPECT_EQ(run_lemma_sweep("lemma4", json{{"s_max", 2}, {"n_max", 9}}).verdict, Verdict::Pass);
    EXPECT_EQ(run_lemma_sweep("lemma5", json{{"s_max", 2}, {"n_max", 9}}).verdict, Verdict::Pass);
    EXPECT_EQ(run_lemma_sweep("lemma6", json{{"samples", 40}}).verdict, Verdict::Pass);
    EXPECT_EQ(run_lemma_sweep("lemma7", json{{"samples", 20}}).verdict, Verdict::Pass);
    EXPECT_THROW(run_lemma_sweep("lemma3", json::object()), PreconditionError);
    const auto r = run(R"({"suite":"lemma-sweep","lemma":"lemma8","grid":{"delta_max":2,"n_max":20}})");
    EXPECT_EQ(r.verdict, Verdict::Pass);
    EXPECT_EQ(r.suite["lemma"], "lemma8");
}

TEST(Report, SchemaAndNullMargins) {
    const auto r = run(R"({"suite":"theorem1","n":5,"delta":1,"k":3,"d":1})");
    const json j = report_to_json(r);
    for (const char* key : {"schema_version", "suite", "graphs_examined", "hypothesis_satisfying", "conclusion_holds",
                            "exceptions_found", "expected_exceptions", "verdict", "details", "wall_time"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["schema_version"], 1);
    EXPECT_FALSE(report_to_json(r, false).contains("wall_time"));
    EXPECT_TRUE(number_or_null(std::numeric_limits<double>::infinity()).is_null());
    EXPECT_TRUE(number_or_null(std::nan("")).is_null());
    EXPECT_EQ(number_or_null(1.5), 1.5);

    ComparisonVerdict v;
    v.lemma = "lemma8";
    EXPECT_TRUE(to_json(v)["margin"].is_null());
    // Round-trips through text.
    EXPECT_EQ(json::parse(dump_report(r)), j);
}
