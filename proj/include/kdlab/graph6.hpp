#pragma once

// graph6 reader/writer. Layout: N(n) followed by the upper triangle of the
// adjacency matrix in column order (x(0,1), x(0,2), x(1,2), x(0,3), ...),
// packed six bits per byte big-endian, each byte offset by 63, zero padded.

#include <cstddef>
#include <string>
#include <string_view>

#include "kdlab/errors.hpp"
#include "kdlab/graph.hpp"

namespace kdlab {

namespace detail {
inline constexpr int kG6Bias = 63;
inline constexpr int kG6Max = 126;
inline constexpr std::string_view kG6Header = ">>graph6<<";
}  // namespace detail

inline Graph parse_graph6(std::string_view text) {
    using namespace detail;
    std::size_t pos = 0;
    if (text.starts_with(kG6Header)) pos = kG6Header.size();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);

    auto byte_at = [&](std::size_t i) -> int {
        if (i >= text.size()) throw ParseError("graph6: unexpected end of input", i);
        const int c = static_cast<unsigned char>(text[i]);
        if (c < kG6Bias || c > kG6Max) throw ParseError("graph6: character out of range", i);
        return c - kG6Bias;
    };

    int n = 0;
    const int first = byte_at(pos);
    if (first != kG6Max - kG6Bias) {
        n = first;
        pos += 1;
    } else {
        if (pos + 1 < text.size() && static_cast<unsigned char>(text[pos + 1]) == kG6Max) {
            throw ParseError("graph6: order exceeds 64", pos);
        }
        n = (byte_at(pos + 1) << 12) | (byte_at(pos + 2) << 6) | byte_at(pos + 3);
        if (n > kMaxOrder) throw ParseError("graph6: order exceeds 64", pos);
        pos += 4;
    }

    Graph g(n);
    const std::size_t nbits = static_cast<std::size_t>(n) * static_cast<std::size_t>(n > 0 ? n - 1 : 0) / 2;
    const std::size_t nbytes = (nbits + 5) / 6;
    if (text.size() - pos > nbytes) throw ParseError("graph6: trailing bytes after adjacency data", pos + nbytes);

    std::size_t bit = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++bit) {
            const int chunk = byte_at(pos + bit / 6);
            if ((chunk >> (5 - bit % 6)) & 1) g.add_edge(i, j);
        }
    }
    if (nbits % 6 != 0) {
        const std::size_t last = pos + nbytes - 1;
        const int pad_mask = (1 << (6 - nbits % 6)) - 1;
        if ((byte_at(last) & pad_mask) != 0) throw ParseError("graph6: nonzero padding bits", last);
    }
    return g;
}

inline std::string write_graph6(const Graph& g) {
    using namespace detail;
    const int n = g.order();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + kG6Bias));
    } else {
        out.push_back(static_cast<char>(kG6Max));
        out.push_back(static_cast<char>(((n >> 12) & 0x3f) + kG6Bias));
        out.push_back(static_cast<char>(((n >> 6) & 0x3f) + kG6Bias));
        out.push_back(static_cast<char>((n & 0x3f) + kG6Bias));
    }
    int chunk = 0;
    int filled = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            chunk = (chunk << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(chunk + kG6Bias));
                chunk = 0;
                filled = 0;
            }
        }
    }
    if (filled > 0) out.push_back(static_cast<char>((chunk << (6 - filled)) + kG6Bias));
    return out;
}

}  // namespace kdlab
