#pragma once

#include <cstdint>
#include <fstream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "kdlab/enumerate.hpp"
#include "kdlab/errors.hpp"
#include "kdlab/extremal.hpp"
#include "kdlab/graph.hpp"
#include "kdlab/graph6.hpp"

namespace kdlab::harness {

/// One graph6 string per line; blank lines and lines starting with '>' other than
/// a ">>graph6<<" header prefix are ignored.
inline std::vector<Graph> read_graph6_stream(std::istream& in) {
    std::vector<Graph> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '>' && !std::string_view(line).starts_with(">>graph6<<")) continue;
        try {
            out.push_back(parse_graph6(line));
        } catch (const ParseError& e) {
            throw ParseError(std::string("line ") + std::to_string(lineno) + ": " + e.what(), e.offset());
        }
    }
    return out;
}

inline std::vector<Graph> read_graph6_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open corpus file '" + path + "'");
    return read_graph6_stream(in);
}

/// Uniform over labelled edge subsets (one fair bit per vertex pair from a
/// mt19937_64 stream), conditioned on connectivity and minimum degree by rejection.
class RandomGraphSampler {
public:
    RandomGraphSampler(int n, int min_deg, std::uint64_t seed) : n_(n), min_deg_(min_deg), rng_(seed) {
        if (n < 1 || n > kMaxOrder) throw PreconditionError("random sampler requires 1 <= n <= 64");
        if (min_deg > n - 1) throw PreconditionError("minimum degree exceeds n - 1");
    }

    Graph draw_unconditioned() {
        Graph g(n_);
        for (int j = 1; j < n_; ++j)
            for (int i = 0; i < j; ++i)
                if (rng_() >> 63) g.add_edge(i, j);
        return g;
    }

    Graph next() {
        for (;;) {
            Graph g = draw_unconditioned();
            if (accept(g)) return g;
        }
    }

    /// Complement of a sparse graph: each pair is absent with probability 2^-bits.
    Graph next_dense(int bits) {
        if (bits < 1 || bits > 16) throw PreconditionError("dense sampling needs 1 <= bits <= 16");
        for (;;) {
            Graph g(n_);
            for (int j = 1; j < n_; ++j)
                for (int i = 0; i < j; ++i)
                    if ((rng_() >> (64 - bits)) != 0) g.add_edge(i, j);
            if (accept(g)) return g;
        }
    }

    std::mt19937_64& engine() { return rng_; }

private:
    bool accept(const Graph& g) const { return is_connected(g) && (n_ == 0 || min_degree(g) >= min_deg_); }

    int n_;
    int min_deg_;
    std::mt19937_64 rng_;
};

/// G_s(n) for 1 <= s <= floor(n/2).
inline std::vector<Graph> extremal_family(int n) {
    std::vector<Graph> out;
    for (int s = 1; s <= n / 2; ++s) out.push_back(build_Gs(n, s));
    return out;
}

}  // namespace kdlab::harness
