#pragma once

// Suite specifications and reports, with their JSON forms.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "kdlab/errors.hpp"

namespace kdlab::harness {

using json = nlohmann::json;

inline constexpr int kReportSchemaVersion = 1;

struct CorpusSpec {
    enum class Source { Enumerate, File, Random };
    Source source = Source::Enumerate;
    std::string path;
    std::size_t count = 0;
    std::uint64_t seed = 1;
    bool inject_extremal = true;
    /// Extra near-complete samples drawn after the uniform ones (random corpora only).
    std::size_t dense_count = 0;
    int dense_bits = 3;
};

struct SuiteSpec {
    std::string suite;
    std::optional<int> n;
    std::optional<int> delta;
    std::optional<int> k;
    std::optional<int> d;
    CorpusSpec corpus;

    // sharpness
    std::pair<int, int> delta_range{1, 1};
    std::pair<int, int> n_range{3, 8};
    std::vector<int> k_set{2, 3};
    std::string d_rule = "all";
    int witness_max_order = 10;

    // oracle-equivalence
    int n_min = 3;
    int n_max = 7;

    // lemma-sweep
    std::string lemma;
    json grid = json::object();

    /// Worker count; 0 selects default_thread_count(). Never echoed (results do not depend on it).
    unsigned threads = 0;

    json raw = json::object();
};

inline std::string corpus_source_name(CorpusSpec::Source s) {
    switch (s) {
        case CorpusSpec::Source::Enumerate: return "enumerate";
        case CorpusSpec::Source::File: return "graph6-file";
        case CorpusSpec::Source::Random: return "random";
    }
    return "?";
}

inline CorpusSpec corpus_from_json(const json& j) {
    CorpusSpec c;
    if (j.is_null()) return c;
    const std::string type = j.value("type", "enumerate");
    if (type == "enumerate") {
        c.source = CorpusSpec::Source::Enumerate;
    } else if (type == "graph6-file") {
        c.source = CorpusSpec::Source::File;
        c.path = j.at("path").get<std::string>();
    } else if (type == "random") {
        c.source = CorpusSpec::Source::Random;
        c.count = j.value("count", std::size_t{10000});
        c.seed = j.value("seed", std::uint64_t{1});
        c.dense_count = j.value("dense_count", std::size_t{0});
        c.dense_bits = j.value("dense_bits", 3);
    } else {
        throw PreconditionError("unknown corpus type '" + type + "'");
    }
    c.inject_extremal = j.value("inject_extremal", c.source == CorpusSpec::Source::Random);
    return c;
}

inline json corpus_to_json(const CorpusSpec& c) {
    json j{{"type", corpus_source_name(c.source)}};
    if (c.source == CorpusSpec::Source::File) j["path"] = c.path;
    if (c.source == CorpusSpec::Source::Random) {
        j["count"] = c.count;
        j["seed"] = c.seed;
        if (c.dense_count) {
            j["dense_count"] = c.dense_count;
            j["dense_bits"] = c.dense_bits;
        }
    }
    j["inject_extremal"] = c.inject_extremal;
    return j;
}

inline SuiteSpec suite_spec_from_json(const json& j) {
    SuiteSpec s;
    s.raw = j;
    s.suite = j.at("suite").get<std::string>();
    auto opt_int = [&](const char* key) -> std::optional<int> {
        if (j.contains(key) && !j.at(key).is_null()) return j.at(key).get<int>();
        return std::nullopt;
    };
    s.n = opt_int("n");
    s.delta = opt_int("delta");
    s.k = opt_int("k");
    s.d = opt_int("d");
    if (j.contains("corpus")) s.corpus = corpus_from_json(j.at("corpus"));
    if (j.contains("delta_range")) s.delta_range = j.at("delta_range").get<std::pair<int, int>>();
    if (j.contains("n_range")) s.n_range = j.at("n_range").get<std::pair<int, int>>();
    if (j.contains("k_set")) s.k_set = j.at("k_set").get<std::vector<int>>();
    s.d_rule = j.value("d_rule", s.d_rule);
    s.witness_max_order = j.value("witness_max_order", s.witness_max_order);
    s.n_min = j.value("n_min", s.n_min);
    s.n_max = j.value("n_max", s.n_max);
    s.lemma = j.value("lemma", std::string{});
    if (j.contains("grid")) s.grid = j.at("grid");
    if (j.contains("threads")) s.threads = j.at("threads").get<unsigned>();
    s.raw.erase("threads");
    return s;
}

/// Echo of the effective specification (inputs after defaults and overrides).
inline json suite_spec_to_json(const SuiteSpec& s) {
    json j = s.raw;
    j["suite"] = s.suite;
    if (s.n) j["n"] = *s.n;
    if (s.delta) j["delta"] = *s.delta;
    if (s.k) j["k"] = *s.k;
    if (s.d) j["d"] = *s.d;
    if (s.raw.contains("corpus") || s.corpus.source != CorpusSpec::Source::Enumerate) j["corpus"] = corpus_to_json(s.corpus);
    return j;
}

enum class Verdict { Pass, Fail, Inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct SuiteReport {
    json suite = json::object();
    std::size_t graphs_examined = 0;
    std::size_t hypothesis_satisfying = 0;
    std::size_t conclusion_holds = 0;
    std::vector<std::string> exceptions_found;
    std::vector<std::string> expected_exceptions;
    Verdict verdict = Verdict::Pass;
    double wall_time = 0.0;
    json details = json::object();

    bool passed() const { return verdict == Verdict::Pass; }
};

/// Finite doubles as numbers, infinities and NaN as null.
inline json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json report_to_json(const SuiteReport& r, bool include_wall_time = true) {
    json j{
        {"schema_version", kReportSchemaVersion},
        {"suite", r.suite},
        {"graphs_examined", r.graphs_examined},
        {"hypothesis_satisfying", r.hypothesis_satisfying},
        {"conclusion_holds", r.conclusion_holds},
        {"exceptions_found", r.exceptions_found},
        {"expected_exceptions", r.expected_exceptions},
        {"verdict", to_string(r.verdict)},
        {"details", r.details},
    };
    if (include_wall_time) j["wall_time"] = r.wall_time;
    return j;
}

}  // namespace kdlab::harness
