#pragma once

// JSON forms of library results. Objects serialize with sorted keys.

#include <string>

#include "json.hpp"
#include "kdlab/deficiency.hpp"
#include "kdlab/extremal.hpp"
#include "kdlab/harness/spec.hpp"
#include "kdlab/kmatching.hpp"
#include "kdlab/spectral.hpp"

namespace kdlab::harness {

inline json to_json(const KMatching& m) {
    json weights = json::array();
    for (const auto& e : m.weights) weights.push_back({e.u, e.v, e.weight});
    return {{"k", m.k}, {"weights", weights}};
}

inline json to_json(const DeficiencyReport& r) {
    json barriers = json::array();
    for (VertexSet s : r.barriers) barriers.push_back(members(s));
    return {{"k", r.k}, {"value", r.value}, {"parity_branch", std::string(to_string(r.parity_branch))}, {"barriers", barriers}};
}

inline json to_json(const CriticalityVerdict& v) {
    json j{{"property", std::string(to_string(v.property))}, {"holds", v.holds}, {"k", v.k}};
    j["d"] = v.d ? json(*v.d) : json(nullptr);
    j["violating_set"] = v.violating_set ? json(members(*v.violating_set)) : json(nullptr);
    if (v.failing_vertex) j["failing_vertex"] = *v.failing_vertex;
    return j;
}

inline json to_json(const SpectralResult& s) {
    return {{"rho", s.rho}, {"residual", s.residual}, {"iterations", s.iterations}};
}

inline json to_json(const ComparisonVerdict& v) {
    json rows = json::array();
    for (const auto& r : v.rows) {
        json row{{"s", r.s}, {"edges", r.edges}};
        row["rho"] = r.rho ? number_or_null(*r.rho) : json(nullptr);
        row["rho_closed_form"] = r.rho_closed_form ? number_or_null(*r.rho_closed_form) : json(nullptr);
        rows.push_back(row);
    }
    return {{"lemma", v.lemma},
            {"case", v.case_label},
            {"outcome", std::string(to_string(v.outcome))},
            {"margin", number_or_null(v.margin)},
            {"rows", rows},
            {"note", v.note}};
}

inline std::string dump_report(const SuiteReport& r, bool include_wall_time = true) {
    return report_to_json(r, include_wall_time).dump(2);
}

}  // namespace kdlab::harness
