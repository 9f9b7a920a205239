#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "kdlab/extremal.hpp"
#include "kdlab/spectral.hpp"
#include "oracles.hpp"

using namespace kdlab;

TEST(SpectralRadius, CompleteAndBipartite) {
    for (int n = 2; n <= 20; ++n) EXPECT_NEAR(spectral_radius(complete_graph(n)).rho, n - 1, 1e-9);
    for (int a = 1; a <= 6; ++a)
        for (int b = 1; b <= 6; ++b) EXPECT_NEAR(spectral_radius(complete_bipartite(a, b)).rho, std::sqrt(a * b), 1e-9);
    EXPECT_NEAR(spectral_radius(complete_graph(1)).rho, 0.0, 1e-12);
}

TEST(SpectralRadius, Preconditions) {
    EXPECT_THROW(spectral_radius(Graph(0)), PreconditionError);
    EXPECT_THROW(spectral_radius(empty_graph(3)), PreconditionError);
    EXPECT_THROW(spectral_radius(complete_graph(3), 0.0), PreconditionError);
}

TEST(SpectralRadius, ConvergenceErrorCarriesEstimate) {
    // A bipartite graph oscillates under plain power iteration; one step is never enough.
    try {
        spectral_radius(path_graph(9), 1e-15, 1);
        FAIL() << "expected non-convergence";
    } catch (const ConvergenceError& e) {
        EXPECT_GT(e.best_estimate().rho, 0.0);
        EXPECT_GT(e.best_estimate().residual, 0.0);
    }
}

TEST(SpectralRadius, AgreesWithDenseEigensolver) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 30);
        const Graph g = oracle::random_connected(n, 0.3 + 0.5 * (trial % 3) / 2.0, rng);
        const double ours = spectral_radius(g).rho;
        ASSERT_NEAR(ours, oracle::eigen_spectral_radius(g), 1e-9) << "n=" << n;
        ASSERT_LE(ours, max_degree(g) + 1e-9);
        ASSERT_GE(ours, 2.0 * g.edge_count() / n - 1e-9);
    }
}

TEST(SpectralRadius, AddingAnEdgeIncreasesIt) {
    std::mt19937_64 rng(47);
    int checked = 0;
    while (checked < 200) {
        const int n = 3 + static_cast<int>(rng() % 10);
        const Graph g = oracle::random_connected(n, 0.35, rng);
        std::vector<std::pair<int, int>> non_edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (!g.has_edge(u, v)) non_edges.emplace_back(u, v);
        if (non_edges.empty()) continue;
        ++checked;
        Graph h = g;
        const auto [u, v] = non_edges[rng() % non_edges.size()];
        h.add_edge(u, v);
        ASSERT_GT(spectral_radius(h).rho - spectral_radius(g).rho, 1e-10);
    }
}

TEST(SpectralRadius, G1OnTwelveVertices) {
    const double rho = spectral_radius(build_Gs(12, 1)).rho;
    EXPECT_GT(rho, 10.0);
    EXPECT_LT(rho, 10.2);
    const Polynomial f{{1, -9, -11, 9}};
    EXPECT_NEAR(static_cast<double>(f(rho)), 0.0, 1e-7);
    EXPECT_NEAR(rho, oracle::eigen_spectral_radius(build_Gs(12, 1)), 1e-9);
}

TEST(Quotient, Examples) {
    const int n = 9, s = 2;
    const auto q = quotient_matrix(build_Gs(n, s), gs_partition(n, s));
    EXPECT_TRUE(q.equitable);
    const std::vector<std::vector<double>> want{{s - 1.0, n - 2.0 * s, s * 1.0}, {s * 1.0, n - 2.0 * s - 1, 0}, {s * 1.0, 0, 0}};
    EXPECT_EQ(q.entries, want);

    const auto t = quotient_matrix(half_join(8), {full_set(4), full_set(8) & ~full_set(4)});
    EXPECT_TRUE(t.equitable);
    EXPECT_EQ(t.entries, (std::vector<std::vector<double>>{{3, 4}, {4, 0}}));

    const auto k3 = quotient_matrix(complete_graph(3), {singleton(0), make_set({1, 2})});
    EXPECT_TRUE(k3.equitable);
    EXPECT_EQ(k3.entries, (std::vector<std::vector<double>>{{0, 2}, {1, 1}}));

    EXPECT_TRUE(quotient_matrix(path_graph(3), {singleton(1), make_set({0, 2})}).equitable);
    EXPECT_FALSE(quotient_matrix(path_graph(4), {make_set({0, 1}), make_set({2, 3})}).equitable);
}

TEST(Quotient, Preconditions) {
    EXPECT_THROW(quotient_matrix(complete_graph(3), {singleton(0)}), PreconditionError);
    EXPECT_THROW(quotient_matrix(complete_graph(3), {make_set({0, 1}), make_set({1, 2})}), PreconditionError);
    EXPECT_THROW(quotient_matrix(complete_graph(3), {full_set(3), 0}), PreconditionError);
    EXPECT_THROW(quotient_matrix(complete_graph(3), {full_set(4)}), PreconditionError);
}

TEST(Charpoly, Examples) {
    EXPECT_EQ(charpoly_fs(12, 1), (Polynomial{{1, -9, -11, 9}}));
    EXPECT_EQ(charpoly_fs(7, 3), (Polynomial{{1, -2, -12, 0}}));
    EXPECT_EQ(charpoly_tilde(4), (Polynomial{{1, -1, -4}}));
    EXPECT_EQ(charpoly_tilde(2), (Polynomial{{1, 0, -1}}));
    EXPECT_EQ(charpoly_tilde(12), (Polynomial{{1, -5, -36}}));
    EXPECT_THROW(charpoly_tilde(5), PreconditionError);
    EXPECT_THROW(charpoly_fs(7, 4), PreconditionError);
}

TEST(Charpoly, RootsMatchIteration) {
    EXPECT_NEAR(largest_root(charpoly_fs(7, 3)), spectral_radius(build_Gs(7, 3)).rho, 1e-9);
    EXPECT_NEAR(largest_root(charpoly_tilde(4)), (1 + std::sqrt(17.0)) / 2, 1e-12);
    EXPECT_NEAR(largest_root(charpoly_tilde(4)), spectral_radius(half_join(4)).rho, 1e-9);
    EXPECT_NEAR(largest_root(charpoly_tilde(2)), 1.0, 1e-12);
    EXPECT_NEAR(largest_root(charpoly_tilde(12)), 9.0, 1e-12);
    EXPECT_NEAR(spectral_radius(half_join(12)).rho, 9.0, 1e-9);
}

TEST(LargestRoot, Examples) {
    const double r = largest_root(Polynomial{{1, -9, -11, 9}});
    EXPECT_GT(r, 10.0);
    EXPECT_LT(r, 10.2);
    const Polynomial cubic{{1, -9, -11, 9}};
    EXPECT_LT(cubic(10.0L), 0);
    EXPECT_GT(cubic(10.2L), 0);
    EXPECT_NEAR(largest_root(Polynomial{{2, -6}}), 3.0, 1e-15);
    EXPECT_NEAR(largest_root(Polynomial{{-1, 1, 4}}), (1 + std::sqrt(17.0)) / 2, 1e-12);
    // (x-1)(x-2)(x-3)
    EXPECT_NEAR(largest_root(Polynomial{{1, -6, 11, -6}}), 3.0, 1e-12);
    // Single real root: x^3 + x + 1.
    const Polynomial one_real{{1, 0, 1, 1}};
    EXPECT_NEAR(static_cast<double>(one_real(largest_root(one_real))), 0.0, 1e-12);
    EXPECT_THROW(largest_root(Polynomial{{1, 0, 1}}), std::domain_error);
    EXPECT_THROW(largest_root(Polynomial{{5}}), PreconditionError);
}

TEST(LargestRoot, EveryGsMatchesEigenOracle) {
    for (int n = 2; n <= 40; ++n)
        for (int s = 1; s <= n / 2; ++s)
            ASSERT_NEAR(gs_spectral_radius_closed_form(n, s), oracle::eigen_spectral_radius(build_Gs(n, s)), 1e-9)
                << "n=" << n << " s=" << s;
}

TEST(QuotientCharpoly, MatchesClosedForms) {
    for (int n = 3; n <= 30; ++n) {
        for (int s = 1; 2 * s < n; ++s)
            ASSERT_EQ(quotient_charpoly(quotient_matrix(build_Gs(n, s), gs_partition(n, s))), charpoly_fs(n, s));
        if (n % 2 == 0) {
            ASSERT_EQ(quotient_charpoly(quotient_matrix(half_join(n), {full_set(n / 2), full_set(n) & ~full_set(n / 2)})),
                      charpoly_tilde(n));
        }
    }
    EXPECT_THROW(quotient_charpoly(quotient_matrix(path_graph(4), {make_set({0, 1}), make_set({2, 3})})),
                 PreconditionError);
}

TEST(Claim, Examples) {
    const auto v = claim_polynomials(12, 1, 2, 10.0);
    EXPECT_DOUBLE_EQ(v.g1, -99.0);
    EXPECT_DOUBLE_EQ(v.h, -99.0);
    EXPECT_EQ(g1_polynomial(12, 1, 2).eval_exact(10), -99);
    // g2 = 2x^2 - 5x - 207 at x = 6.
    EXPECT_EQ(g2_polynomial_times8(12, 1).eval_exact(6), -8 * 165);
    EXPECT_DOUBLE_EQ(claim_polynomials(12, 1, 1, 6.0).g2, -165.0);
    EXPECT_THROW(claim_polynomials(11, 1, 2, 10.0), PreconditionError);
    EXPECT_THROW(claim_polynomials(12, 2, 1, 10.0), PreconditionError);
}

TEST(Claim, DifferenceIdentityIsExact) {
    for (std::int64_t delta = 1; delta <= 4; ++delta)
        for (std::int64_t n = 2 * delta; n <= 50; ++n)
            for (std::int64_t s = delta; 2 * s <= n; ++s) {
                const Polynomial fs = charpoly_fs(n, s), fd = charpoly_fs(n, delta), g1 = g1_polynomial(n, delta, s);
                ASSERT_EQ(fs.coeffs[0], fd.coeffs[0]);
                for (int i = 1; i <= 3; ++i)
                    ASSERT_EQ(fs.coeffs[i] - fd.coeffs[i], -(s - delta) * g1.coeffs[i - 1]) << n << ' ' << delta << ' ' << s;
            }
}

TEST(Claim, SecondPolynomialIsFdeltaMinusTildeProduct) {
    // 8 g2 = 8 (f_δ - (x - n/2) f̃) for even n, checked as polynomials.
    for (std::int64_t delta = 1; delta <= 4; ++delta)
        for (std::int64_t n = 2 * delta + 2; n <= 60; n += 2) {
            const Polynomial fd = charpoly_fs(n, delta), ft = charpoly_tilde(n);
            // (x - n/2)(x^2 + b x + c) = x^3 + (b - n/2) x^2 + (c - b n/2) x - c n/2
            const std::int64_t h = n / 2, b = ft.coeffs[1], c = ft.coeffs[2];
            const std::int64_t prod[4] = {1, b - h, c - b * h, -c * h};
            const Polynomial g2 = g2_polynomial_times8(n, delta);
            ASSERT_EQ(fd.coeffs[0] - prod[0], 0);
            for (int i = 1; i <= 3; ++i) ASSERT_EQ(8 * (fd.coeffs[i] - prod[i]), g2.coeffs[i - 1]) << n << ' ' << delta;
        }
}

TEST(Claim, NegativeOnTheBracket) {
    for (std::int64_t delta = 1; delta <= 3; ++delta)
        for (std::int64_t n = 8 * delta + 4; n <= 8 * delta + 40; ++n) {
            for (std::int64_t s = delta + 1; 2 * s < n; ++s) {
                for (double x = n - delta - 1; x <= 2.0 * n; x += 0.25) ASSERT_LT(claim_polynomials(n, delta, s, x).g1, 0);
                ASSERT_LT(claim_polynomials(n, delta, s, 0.0).h, 0);
            }
            if (n % 2 == 1) continue;
            for (double x = n / 2.0; x <= n - 1; x += 0.25) ASSERT_LT(claim_polynomials(n, delta, delta, x).g2, 0);
        }
}
