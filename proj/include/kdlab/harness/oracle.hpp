#pragma once

// Cross-check of the two k-d-criticality oracles over every connected graph of
// small order.

#include <chrono>
#include <string>
#include <vector>

#include "kdlab/deficiency.hpp"
#include "kdlab/enumerate.hpp"
#include "kdlab/graph6.hpp"
#include "kdlab/harness/parallel.hpp"
#include "kdlab/harness/spec.hpp"
#include "kdlab/kmatching.hpp"

namespace kdlab::harness {

inline SuiteReport run_oracle_equivalence(const SuiteSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();
    const int k = spec.k.value_or(3);
    if (k < 3 || k % 2 == 0) throw PreconditionError("oracle equivalence requires odd k >= 3");
    const int n_min = std::max(3, spec.n_min);
    if (spec.n_max > kMaxEnumerationOrder)
        throw PreconditionError("oracle equivalence enumerates n <= " + std::to_string(kMaxEnumerationOrder));
    if (!within_matching_budget(spec.n_max, k))
        throw ResourceError("witness DP budget exceeded: (k+1)^n_max > 2^26");

    SuiteReport r;
    r.suite = suite_spec_to_json(spec);
    json per_order = json::array();
    json divergences = json::array();
    std::size_t identity_agree = 0;
    std::size_t identity_total = 0;

    for (int n = n_min; n <= spec.n_max; ++n) {
        const auto& graphs = connected_graphs(n);
        std::vector<int> ds;
        for (int d = 1; d <= k; ++d)
            if ((n - d) % 2 == 0) ds.push_back(d);

        struct Row {
            std::vector<char> deficiency;
            std::vector<char> witness;
            bool identity = false;
        };
        std::vector<Row> rows(graphs.size());
        parallel_for(graphs.size(), spec.threads ? spec.threads : default_thread_count(), [&](std::size_t i) {
            const Graph& g = graphs[i];
            Row& row = rows[i];
            for (int d : ds) {
                row.deficiency.push_back(is_kd_critical_deficiency(g, k, d).holds);
                row.witness.push_back(is_kd_critical_witness(g, k, d).holds);
            }
            const long def = deficiency_k(g, k).value;
            const long mu = mu_k(g, k).first;
            row.identity = def == static_cast<long>(k) * n - 2 * mu;
        });

        std::size_t pairs = 0, agree = 0, critical = 0;
        for (std::size_t i = 0; i < graphs.size(); ++i) {
            const Row& row = rows[i];
            for (std::size_t j = 0; j < ds.size(); ++j) {
                ++pairs;
                if (row.deficiency[j] == row.witness[j]) {
                    ++agree;
                    if (row.deficiency[j]) ++critical;
                } else {
                    const std::string g6 = write_graph6(graphs[i]);
                    divergences.push_back({{"graph6", g6},
                                           {"d", ds[j]},
                                           {"deficiency", static_cast<bool>(row.deficiency[j])},
                                           {"witness", static_cast<bool>(row.witness[j])}});
                    if (r.exceptions_found.empty() || r.exceptions_found.back() != g6) r.exceptions_found.push_back(g6);
                }
            }
            ++identity_total;
            if (row.identity) ++identity_agree;
        }
        r.graphs_examined += graphs.size();
        r.hypothesis_satisfying += pairs;
        r.conclusion_holds += agree;
        per_order.push_back({{"n", n},
                             {"graphs", graphs.size()},
                             {"d_values", ds},
                             {"pairs", pairs},
                             {"agreements", agree},
                             {"critical_pairs", critical}});
    }

    r.verdict = divergences.empty() ? Verdict::Pass : Verdict::Fail;
    r.details = {{"k", k},
                 {"per_order", per_order},
                 {"divergences", divergences},
                 {"deficiency_matching_identity", {{"graphs", identity_total}, {"agree", identity_agree}}}};
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace kdlab::harness
