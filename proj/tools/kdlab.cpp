// kdlab command-line driver.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "kdlab/harness/report.hpp"
#include "kdlab/harness/run.hpp"
#include "kdlab/kdlab.hpp"

namespace {

using kdlab::harness::json;

json load_json_arg(const std::string& arg) {
    // Inline JSON or a path to a JSON file.
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw kdlab::PreconditionError("cannot open '" + arg + "'");
    return json::parse(in);
}

int verdict_exit(const kdlab::harness::SuiteReport& r) {
    switch (r.verdict) {
        case kdlab::harness::Verdict::Pass: return 0;
        case kdlab::harness::Verdict::Fail: return 1;
        case kdlab::harness::Verdict::Inconclusive: return 3;
    }
    return 1;
}

int cmd_check(const std::string& g6, int k, std::optional<int> d) {
    using namespace kdlab;
    const Graph g = parse_graph6(g6);
    json out{{"graph6", write_graph6(g)},
             {"order", g.order()},
             {"edges", g.edge_count()},
             {"connected", is_connected(g)}};
    if (g.order() > 0) out["min_degree"] = min_degree(g);
    out["deficiency"] = harness::to_json(deficiency_k(g, k));
    out["only_empty_barrier"] = only_empty_barrier(g, k);
    if (k >= 2 && g.order() >= 3 && is_connected(g)) out["gfc_gbc"] = harness::to_json(classify_gfc_gbc(g, k));
    const bool budget = within_matching_budget(g.order(), k);
    out["matching_budget"] = budget;
    if (budget) {
        const auto [mu, witness] = mu_k(g, k);
        out["mu_k"] = {{"value", mu}, {"witness", harness::to_json(witness)}};
    }
    if (d) {
        json crit{{"deficiency", harness::to_json(is_kd_critical_deficiency(g, k, *d))}};
        crit["witness"] = budget ? harness::to_json(is_kd_critical_witness(g, k, *d)) : json(nullptr);
        out["kd_critical"] = crit;
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_rho(const std::string& g6, double tol) {
    const kdlab::Graph g = kdlab::parse_graph6(g6);
    std::cout << kdlab::harness::to_json(kdlab::spectral_radius(g, tol)).dump(2) << '\n';
    return 0;
}

int cmd_extremal(int n, std::optional<int> s_opt, const std::string& emit) {
    using namespace kdlab;
    if (n < 2 || n > kMaxOrder) throw PreconditionError("extremal requires 2 <= n <= 64");
    const int s_lo = s_opt.value_or(1);
    const int s_hi = s_opt.value_or(n / 2);
    if (emit == "graph6") {
        for (int s = s_lo; s <= s_hi; ++s) std::cout << write_graph6(build_Gs(n, s)) << '\n';
        return 0;
    }
    if (emit == "csv") {
        std::cout << "n,s,edges,rho\n";
        for (int s = s_lo; s <= s_hi; ++s)
            std::cout << n << ',' << s << ',' << edge_count_Gs(n, s) << ',' << std::setprecision(17)
                      << gs_spectral_radius_closed_form(n, s) << '\n';
        return 0;
    }
    json rows = json::array();
    for (int s = s_lo; s <= s_hi; ++s) {
        const Graph g = build_Gs(n, s);
        rows.push_back({{"n", n},
                        {"s", s},
                        {"graph6", write_graph6(g)},
                        {"edges", g.edge_count()},
                        {"edges_closed_form", edge_count_Gs(n, s)},
                        {"rho_closed_form", gs_spectral_radius_closed_form(n, s)},
                        {"rho_iterated", spectral_radius(g).rho}});
    }
    std::cout << (s_opt ? rows.front() : rows).dump(2) << '\n';
    return 0;
}

int cmd_suite(const std::string& spec_path, std::optional<unsigned> threads, std::optional<std::string> corpus) {
    using namespace kdlab::harness;
    SuiteSpec spec = suite_spec_from_json(load_json_arg(spec_path));
    if (threads) spec.threads = *threads;
    if (corpus) {
        spec.corpus.source = CorpusSpec::Source::File;
        spec.corpus.path = *corpus;
        spec.raw["corpus"] = corpus_to_json(spec.corpus);
    }
    const SuiteReport r = run_suite(spec);
    std::cout << dump_report(r) << '\n';
    return verdict_exit(r);
}

void emit_sweep_csv(int lemma, const json& grid) {
    using namespace kdlab;
    if (lemma == 8) {
        std::cout << "n,delta,s,edges\n";
        for (int delta = grid.value("delta_min", 1); delta <= grid.value("delta_max", 5); ++delta)
            for (int n = std::max(2 * delta, 3); n <= grid.value("n_max", 40); ++n)
                for (int s = delta; s <= n / 2; ++s)
                    std::cout << n << ',' << delta << ',' << s << ',' << edge_count_Gs(n, s) << '\n';
    } else if (lemma == 9) {
        std::cout << "n,delta,s,edges,rho,rho_closed_form\n" << std::setprecision(17);
        for (int delta = grid.value("delta_min", 1); delta <= grid.value("delta_max", 2); ++delta)
            for (int n = 8 * delta + 4; n <= 8 * delta + 4 + grid.value("n_extra", 16); ++n)
                for (const auto& row : lemma9_compare(n, delta).rows)
                    std::cout << n << ',' << delta << ',' << row.s << ',' << row.edges << ',' << *row.rho << ','
                              << *row.rho_closed_form << '\n';
    } else {
        throw PreconditionError("CSV output is available for lemmas 8 and 9");
    }
}

int cmd_sweep(int lemma, const std::string& grid_arg, bool csv, std::optional<unsigned> threads) {
    using namespace kdlab::harness;
    const json grid = grid_arg.empty() ? json::object() : load_json_arg(grid_arg);
    if (csv) {
        emit_sweep_csv(lemma, grid);
        return 0;
    }
    const SuiteReport r = run_lemma_sweep("lemma" + std::to_string(lemma), grid, threads.value_or(0));
    std::cout << dump_report(r) << '\n';
    return verdict_exit(r);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-d-critical graph laboratory"};
    app.require_subcommand(1);

    std::string g6;
    int k = 0;
    std::optional<int> d;
    auto* check = app.add_subcommand("check", "Deficiency, barriers and criticality verdicts for one graph");
    check->add_option("graph6", g6, "Graph in graph6 format")->required();
    check->add_option("--k", k, "k")->required();
    check->add_option("--d", d, "d (odd k only)");

    double tol = kdlab::kDefaultSpectralTol;
    auto* rho = app.add_subcommand("rho", "Spectral radius by power iteration");
    rho->add_option("graph6", g6, "Graph in graph6 format")->required();
    rho->add_option("--tol", tol, "Residual tolerance");

    int n = 0;
    std::optional<int> s;
    std::string emit = "json";
    auto* extremal = app.add_subcommand("extremal", "G_s = K_s v (K_{n-2s} + K̄_s) and its closed forms");
    extremal->add_option("--n", n, "Order")->required();
    extremal->add_option("--s", s, "s (default: every 1 <= s <= n/2)");
    extremal->add_option("--emit", emit, "json | graph6 | csv")->check(CLI::IsMember({"json", "graph6", "csv"}));

    std::string spec_path;
    std::optional<unsigned> threads;
    std::optional<std::string> corpus;
    auto* suite = app.add_subcommand("suite", "Run a suite described by JSON");
    suite->add_option("--spec", spec_path, "Suite JSON (file or inline)")->required();
    suite->add_option("--threads", threads, "Worker threads (default: KDLAB_THREADS or all cores)");
    suite->add_option("--corpus", corpus, "graph6 corpus file, overriding the spec");

    int lemma = 8;
    std::string grid;
    bool csv = false;
    auto* sweep = app.add_subcommand("sweep", "Parameter sweep over a comparison lemma");
    sweep->add_option("--lemma", lemma, "4, 5, 6, 7, 8 or 9")->required()->check(CLI::IsMember({4, 5, 6, 7, 8, 9}));
    sweep->add_option("--grid", grid, "Grid JSON (file or inline)");
    sweep->add_flag("--csv", csv, "Emit (n, s, e, rho) rows as CSV");
    sweep->add_option("--threads", threads, "Worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) return cmd_check(g6, k, d);
        if (*rho) return cmd_rho(g6, tol);
        if (*extremal) return cmd_extremal(n, s, emit);
        if (*suite) return cmd_suite(spec_path, threads, corpus);
        if (*sweep) return cmd_sweep(lemma, grid, csv, threads);
    } catch (const kdlab::ParseError& e) {
        std::cerr << "parse error at byte " << e.offset() << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
