#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kdlab/errors.hpp"
#include "kdlab/graph.hpp"

namespace kdlab {

struct SpectralResult {
    double rho = 0.0;
    /// max_v |(A x)_v - rho x_v| for the final unit (2-norm) vector x.
    double residual = 0.0;
    long iterations = 0;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const SpectralResult& best)
        : std::runtime_error("power iteration did not converge (rho ~ " + std::to_string(best.rho) +
                             ", residual " + std::to_string(best.residual) + ")"),
          best_(best) {}

    const SpectralResult& best_estimate() const noexcept { return best_; }

private:
    SpectralResult best_;
};

inline constexpr double kDefaultSpectralTol = 1e-12;
inline constexpr long kMaxPowerIterations = 1'000'000;

/// Largest adjacency eigenvalue of a connected graph by power iteration on A + I
/// (the shift keeps the Perron root strictly dominant for bipartite graphs),
/// started from the all-ones vector, with the Rayleigh quotient as estimate.
inline SpectralResult spectral_radius(const Graph& g, double tol = kDefaultSpectralTol,
                                      long max_iterations = kMaxPowerIterations) {
    if (!(tol > 0)) throw PreconditionError("spectral tolerance must be positive");
    const int n = g.order();
    if (n < 1) throw PreconditionError("spectral radius of the null graph is undefined");
    if (!is_connected(g)) throw PreconditionError("spectral_radius requires a connected graph");
    if (n == 1) return {0.0, 0.0, 0};

    const auto& rows = g.rows();
    std::vector<double> x(static_cast<std::size_t>(n), 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> ax(static_cast<std::size_t>(n));
    auto multiply = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (int v = 0; v < n; ++v) {
            double acc = 0.0;
            for (VertexSet nb = rows[static_cast<std::size_t>(v)]; nb != 0; nb &= nb - 1)
                acc += in[static_cast<std::size_t>(lowest_vertex(nb))];
            out[static_cast<std::size_t>(v)] = acc;
        }
    };

    SpectralResult res;
    for (long it = 0;; ++it) {
        multiply(x, ax);
        double rho = 0.0;
        for (int v = 0; v < n; ++v) rho += x[static_cast<std::size_t>(v)] * ax[static_cast<std::size_t>(v)];
        double residual = 0.0;
        for (int v = 0; v < n; ++v)
            residual = std::max(residual, std::abs(ax[static_cast<std::size_t>(v)] - rho * x[static_cast<std::size_t>(v)]));
        res = {rho, residual, it};
        if (residual <= tol) return res;
        if (it >= max_iterations) throw ConvergenceError(res);

        double norm = 0.0;
        for (int v = 0; v < n; ++v) {
            ax[static_cast<std::size_t>(v)] += x[static_cast<std::size_t>(v)];
            norm += ax[static_cast<std::size_t>(v)] * ax[static_cast<std::size_t>(v)];
        }
        norm = std::sqrt(norm);
        for (int v = 0; v < n; ++v) x[static_cast<std::size_t>(v)] = ax[static_cast<std::size_t>(v)] / norm;
    }
}

// ---------------------------------------------------------------------------
// Quotient matrices

struct QuotientMatrix {
    int dimension = 0;
    std::vector<std::vector<double>> entries;
    std::vector<int> part_sizes;
    /// Every block of A has constant row sums.
    bool equitable = false;
};

/// b_ij = average over v in part i of |N(v) ∩ part j|.
inline QuotientMatrix quotient_matrix(const Graph& g, const std::vector<VertexSet>& partition) {
    VertexSet covered = 0;
    for (VertexSet part : partition) {
        if (part == 0) throw PreconditionError("partition parts must be nonempty");
        if ((part & ~g.vertices()) != 0) throw PreconditionError("partition refers to a vertex outside the graph");
        if ((part & covered) != 0) throw PreconditionError("partition parts must be disjoint");
        covered |= part;
    }
    if (covered != g.vertices()) throw PreconditionError("partition must cover every vertex");

    QuotientMatrix q;
    q.dimension = static_cast<int>(partition.size());
    q.entries.assign(partition.size(), std::vector<double>(partition.size(), 0.0));
    q.equitable = true;
    for (std::size_t i = 0; i < partition.size(); ++i) {
        q.part_sizes.push_back(set_size(partition[i]));
        for (std::size_t j = 0; j < partition.size(); ++j) {
            long total = 0;
            std::optional<int> common;
            for (int v : members(partition[i])) {
                const int c = set_size(g.neighbors(v) & partition[j]);
                total += c;
                if (!common) common = c;
                else if (*common != c) q.equitable = false;
            }
            q.entries[i][j] = static_cast<double>(total) / set_size(partition[i]);
        }
    }
    return q;
}

// ---------------------------------------------------------------------------
// Integer polynomials

/// Integer-coefficient polynomial, leading coefficient first.
struct Polynomial {
    std::vector<std::int64_t> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    long double operator()(long double x) const {
        long double acc = 0;
        for (std::int64_t c : coeffs) acc = acc * x + static_cast<long double>(c);
        return acc;
    }

    __int128 eval_exact(std::int64_t x) const {
        __int128 acc = 0;
        for (std::int64_t c : coeffs) acc = acc * x + c;
        return acc;
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

/// |x I_3 - M_s| for the three-part quotient of G_s = K_s v (K_{n-2s} + K̄_s):
/// x^3 + (s-n+2)x^2 - (s^2-s+n-1)x + (n-1)s^2 - 2s^3.
inline Polynomial charpoly_fs(std::int64_t n, std::int64_t s) {
    if (s < 1 || 2 * s > n) throw PreconditionError("charpoly_fs requires 1 <= s and 2s <= n");
    return {{1, s - n + 2, -(s * s - s + n - 1), (n - 1) * s * s - 2 * s * s * s}};
}

/// |x I_2 - M̃| for K_{n/2} v K̄_{n/2}: x^2 - (n/2 - 1)x - n^2/4.
inline Polynomial charpoly_tilde(std::int64_t n) {
    if (n < 2 || n % 2 != 0) throw PreconditionError("charpoly_tilde requires even n >= 2");
    return {{1, -(n / 2 - 1), -(n * n / 4)}};
}

/// Characteristic polynomial of an equitable quotient with integral entries, dimension <= 3.
inline Polynomial quotient_charpoly(const QuotientMatrix& q) {
    if (!q.equitable) throw PreconditionError("quotient_charpoly requires an equitable partition");
    if (q.dimension < 1 || q.dimension > 3) throw PreconditionError("quotient_charpoly supports dimension 1..3");
    const auto d = static_cast<std::size_t>(q.dimension);
    std::vector<std::vector<std::int64_t>> m(d, std::vector<std::int64_t>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const double e = q.entries[i][j];
            if (e != std::round(e)) throw PreconditionError("quotient entries must be integral");
            m[i][j] = static_cast<std::int64_t>(std::llround(e));
        }
    if (d == 1) return {{1, -m[0][0]}};
    if (d == 2) return {{1, -(m[0][0] + m[1][1]), m[0][0] * m[1][1] - m[0][1] * m[1][0]}};
    const std::int64_t trace = m[0][0] + m[1][1] + m[2][2];
    const std::int64_t minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) + (m[0][0] * m[2][2] - m[0][2] * m[2][0]) +
                                (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    const std::int64_t det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                             m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    return {{1, -trace, minors, -det}};
}

namespace detail {

inline double refine_root(const Polynomial& p, long double lo, long double hi) {
    // p(lo) <= 0 < p(hi) on entry (leading coefficient positive).
    while (hi - lo > 1e-6L) {
        const long double mid = (lo + hi) / 2;
        if (p(mid) <= 0) lo = mid;
        else hi = mid;
    }
    const Polynomial dp = [&] {
        Polynomial d;
        const int deg = p.degree();
        for (int i = 0; i < deg; ++i) d.coeffs.push_back(p.coeffs[static_cast<std::size_t>(i)] * (deg - i));
        return d;
    }();
    long double x = (lo + hi) / 2;
    for (int it = 0; it < 200; ++it) {
        const long double fx = p(x);
        if (fx == 0) return static_cast<double>(x);
        if (fx < 0) lo = x;
        else hi = x;
        const long double dfx = dp(x);
        long double next = (dfx != 0) ? x - fx / dfx : (lo + hi) / 2;
        if (!(next > lo && next < hi)) next = (lo + hi) / 2;
        const long double step = std::abs(next - x);
        x = next;
        if (step < 1e-13L || hi - lo < 1e-13L) break;
    }
    return static_cast<double>(x);
}

}  // namespace detail

/// Largest real root of a polynomial of degree 1..3: closed form up to degree 2,
/// bracketing + bisection + safeguarded Newton for cubics.
inline double largest_root(const Polynomial& poly) {
    if (poly.degree() < 1 || poly.degree() > 3) throw PreconditionError("largest_root supports degree 1..3");
    if (poly.coeffs.front() == 0) throw PreconditionError("leading coefficient must be nonzero");
    Polynomial p = poly;
    if (p.coeffs.front() < 0)
        for (auto& c : p.coeffs) c = -c;
    const long double a = static_cast<long double>(p.coeffs[0]);

    if (p.degree() == 1) return static_cast<double>(-static_cast<long double>(p.coeffs[1]) / a);
    if (p.degree() == 2) {
        const long double b = static_cast<long double>(p.coeffs[1]);
        const long double c = static_cast<long double>(p.coeffs[2]);
        const long double disc = b * b - 4 * a * c;
        if (disc < 0) throw std::domain_error("polynomial has no real root");
        const long double sq = std::sqrt(disc);
        if (b < 0) return static_cast<double>((-b + sq) / (2 * a));
        if (b + sq == 0) return 0.0;
        return static_cast<double>(2 * c / (-b - sq));
    }

    long double bound = 0;
    for (std::size_t i = 1; i < p.coeffs.size(); ++i)
        bound = std::max(bound, std::abs(static_cast<long double>(p.coeffs[i]) / a));
    bound += 1;
    // Critical points of the cubic decide which interval holds the largest root.
    const long double da = 3 * a;
    const long double db = 2 * static_cast<long double>(p.coeffs[1]);
    const long double dc = static_cast<long double>(p.coeffs[2]);
    const long double ddisc = db * db - 4 * da * dc;
    if (ddisc <= 0) return detail::refine_root(p, -bound, bound);
    const long double sq = std::sqrt(ddisc);
    const long double c_lo = (-db - sq) / (2 * da);
    const long double c_hi = (-db + sq) / (2 * da);
    const long double at_hi = p(c_hi);
    if (at_hi == 0) return static_cast<double>(c_hi);
    if (at_hi < 0) return detail::refine_root(p, c_hi, bound);
    return detail::refine_root(p, -bound, c_lo);
}

// ---------------------------------------------------------------------------
// Auxiliary polynomials of the spectral comparison

/// g1(x) = -x^2 + (δ+s-1)x + δ + s - δn + 2δs - ns + 2δ^2 + 2s^2, so that
/// f_s(x) - f_δ(x) = -(s-δ) g1(x).
inline Polynomial g1_polynomial(std::int64_t n, std::int64_t delta, std::int64_t s) {
    return {{-1, delta + s - 1, delta + s - delta * n + 2 * delta * s - n * s + 2 * delta * delta + 2 * s * s}};
}

/// 8 g2(x) with g2(x) = (δ+1)x^2 + (-δ^2+δ-n/2+1)x - 2δ^3 + δ^2 n - δ^2 - n^3/8,
/// i.e. g2 = f_δ - (x - n/2) f̃; scaled so odd n keeps integer coefficients.
inline Polynomial g2_polynomial_times8(std::int64_t n, std::int64_t delta) {
    return {{8 * (delta + 1), -8 * delta * delta + 8 * delta - 4 * n + 8,
             -16 * delta * delta * delta + 8 * delta * delta * n - 8 * delta * delta - n * n * n}};
}

struct ClaimValues {
    double g1 = 0.0;
    /// h(s) = g1(n - δ - 1).
    double h = 0.0;
    double g2 = 0.0;
};

inline ClaimValues claim_polynomials(std::int64_t n, std::int64_t delta, std::int64_t s, double x) {
    if (delta < 1 || s < delta) throw PreconditionError("claim polynomials require 1 <= delta <= s");
    if (n < 8 * delta + 4) throw PreconditionError("claim polynomials require n >= 8*delta + 4");
    const Polynomial g1 = g1_polynomial(n, delta, s);
    ClaimValues v;
    v.g1 = static_cast<double>(g1(x));
    v.h = static_cast<double>(g1.eval_exact(n - delta - 1));
    v.g2 = static_cast<double>(g2_polynomial_times8(n, delta)(x) / 8);
    return v;
}

}  // namespace kdlab
