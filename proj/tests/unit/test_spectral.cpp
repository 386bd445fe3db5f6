#include "sqw/analytic.hpp"
#include "sqw/errors.hpp"
#include "sqw/quadrature.hpp"
#include "sqw/spectral.hpp"
#include "sqw/specfun.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace sqw;

TEST(Eigenstates, SolveStationaryEquation) {
    // -1/4 chi'' + 2 A x chi = eps chi
    const double h = 1e-3;
    for (double A : {0.4, -0.3})
        for (double eps : {-1.0, 0.5})
            for (double x : {-1.5, 0.0, 0.8}) {
                const double c = eigenstate_x(eps, A, x);
                const double d2 = (eigenstate_x(eps, A, x + h) - 2 * c + eigenstate_x(eps, A, x - h)) / (h * h);
                EXPECT_NEAR(-0.25 * d2 + 2 * A * x * c - eps * c, 0.0, 1e-6);
            }
    EXPECT_THROW(eigenstate_x(0.0, 0.0, 1.0), std::invalid_argument);
}

TEST(Coefficients, RoutesAgree) {
    for (double A : {0.4, -0.7, 1.3})
        for (int m = 0; m <= 3; ++m)
            for (double eps : {-2.0, 0.0, 0.9}) {
                const double q = expansion_coeff_x(m, eps, A, CoeffRoute::quadrature);
                const double c = expansion_coeff_x(m, eps, A, CoeffRoute::closed_form);
                EXPECT_NEAR(q, c, 1e-9) << "A=" << A << " m=" << m << " eps=" << eps;
            }
    EXPECT_THROW(expansion_coeff_x(-1, 0.0, 0.4), std::invalid_argument);
    EXPECT_THROW(expansion_coeff_x(0, 0.0, 0.0), std::invalid_argument);
}

TEST(Coefficients, XCoefficientsAreComplete) {
    // int |<eps|m>|^2 d eps = 1.
    const double A = 0.5;
    for (int m : {0, 2}) {
        const double s = integrate<double>(
            [&](double e) {
                const double c = expansion_coeff_x(m, e, A, CoeffRoute::closed_form);
                return c * c;
            },
            -25.0, 25.0, 1e-12, 1e-10);
        EXPECT_NEAR(s, 1.0, 1e-8) << "m=" << m;
    }
}

TEST(Coefficients, YCoefficientMatchesFourierIntegral) {
    for (int n = 0; n <= 3; ++n)
        for (double k : {-1.2, 0.0, 2.1}) {
            const double N = hg_norm_1d(n);
            const cplx q = integrate<cplx>(
                               [&](double y) {
                                   return std::polar(1.0, -k * y) * N * std::exp(-y * y) * hermite(n, std::sqrt(2.0) * y);
                               },
                               -12.0, 12.0) /
                           std::sqrt(2.0 * std::numbers::pi);
            EXPECT_NEAR(std::abs(expansion_coeff_y(n, k) - q), 0.0, 1e-12);
        }
}

TEST(SpectralRoute, ReproducesAnalyticPropagation) {
    const Grid2D g(64, 64, 6.0, 6.0);
    for (const auto& mode : {ModeSpec::hg(0, 0), ModeSpec::hg(3, 1), ModeSpec::hg(1, 2, 0.4, -0.3)})
        for (double A : {0.0, 0.4}) {
            const auto coeffs = analyze(mode, A, g, 1.5);
            for (double zeta : {0.0, 0.7, 1.5}) {
                const auto f = reconstruct(evolve_in_eigenbasis(coeffs, zeta), g);
                EXPECT_LT(l2_distance(f, propagated_field(mode, A, zeta, g)), 1e-5)
                    << "m=" << mode.first << " A=" << A << " zeta=" << zeta;
            }
        }
}

TEST(SpectralRoute, EvolutionComposes) {
    const Grid2D g(32, 32, 5.0, 5.0);
    const auto c = analyze(ModeSpec::hg(1, 0), 0.4, g, 1.0);
    const auto a = evolve_in_eigenbasis(evolve_in_eigenbasis(c, 0.4), 0.6);
    const auto b = evolve_in_eigenbasis(c, 1.0);
    EXPECT_NEAR(a.zeta, 1.0, 1e-15);
    for (std::size_t i = 0; i < a.c.size(); ++i) EXPECT_NEAR(std::abs(a.c[i] - b.c[i]), 0.0, 1e-12);
}

TEST(SpectralRoute, Guards) {
    const Grid2D g(32, 32, 5.0, 5.0);
    const auto c = analyze(ModeSpec::hg(0, 0), 0.4, g, 1.0);
    EXPECT_THROW(reconstruct(c, Grid2D(32, 32, 9.0, 5.0)), NumericalGuardError);
    EXPECT_THROW(reconstruct(evolve_in_eigenbasis(c, 50.0 * c.zeta_limit + 10.0), g), NumericalGuardError);
    EXPECT_THROW(analyze(ModeSpec::lg(1, 0), 0.4, g, 1.0), std::invalid_argument);
}

TEST(SpectralRoute, CsvTables) {
    const Grid2D g(32, 32, 5.0, 5.0);
    const auto c = analyze(ModeSpec::hg(0, 0), 0.4, g, 1.0);
    const auto x = coefficients_csv_x(c), y = coefficients_csv_y(c);
    EXPECT_EQ(x.rfind("epsilon,re,im\n", 0), 0u);
    EXPECT_EQ(y.rfind("k,re,im\n", 0), 0u);
    EXPECT_EQ(static_cast<std::size_t>(std::count(x.begin(), x.end(), '\n')), c.c.size() + 1);
}
