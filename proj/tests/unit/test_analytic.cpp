#include "sqw/analytic.hpp"
#include "sqw/errors.hpp"
#include "sqw/quadrature.hpp"
#include "sqw/specfun.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace sqw;

namespace {

constexpr double kPi = std::numbers::pi;

// i d/dzeta psi + (1/4) Lap psi - 2 A x psi, by central differences.
cplx pde_residual(const ModeSpec& mode, double A, double zeta, double x, double y) {
    const double h = 1e-3;
    auto f = [&](double z, double xx, double yy) { return mode_value(mode, A, z, xx, yy); };
    const cplx c = f(zeta, x, y);
    const cplx dz = (f(zeta + h, x, y) - f(zeta - h, x, y)) / (2 * h);
    const cplx lap = (f(zeta, x + h, y) + f(zeta, x - h, y) + f(zeta, x, y + h) + f(zeta, x, y - h) - 4.0 * c) / (h * h);
    return cplx{0, 1} * dz + 0.25 * lap - 2.0 * A * x * c;
}

} // namespace

TEST(ModeSpec, ValidationAndOrder) {
    EXPECT_THROW(ModeSpec::hg(-1, 0).validate(), std::invalid_argument);
    EXPECT_THROW(ModeSpec::lg(2, -1).validate(), std::invalid_argument);
    EXPECT_NO_THROW(ModeSpec::lg(-3, 1).validate());
    EXPECT_EQ(ModeSpec::hg(2, 1).order(), 3);
    EXPECT_EQ(ModeSpec::lg(-3, 1).order(), 5);
}

TEST(Analytic, FreeGaussianClosedForm) {
    // psi = sqrt(2/pi) / (1 + i zeta) exp(-r^2 / (1 + i zeta)).
    const auto mode = ModeSpec::hg(0, 0);
    for (double zeta : {0.0, 0.6, 2.0})
        for (double x : {-1.2, 0.0, 0.7})
            for (double y : {-0.4, 0.9}) {
                const cplx q{1.0, zeta};
                const cplx expected = std::sqrt(2.0 / kPi) / q * std::exp(-(x * x + y * y) / q);
                EXPECT_NEAR(std::abs(mode_value(mode, 0.0, zeta, x, y) - expected), 0.0, 1e-15);
            }
}

TEST(Analytic, HgNormalization) {
    for (int m = 0; m <= 6; ++m) {
        const double n = hg_norm_1d(m);
        const double v = integrate<double>(
            [&](double x) {
                const double u = n * std::exp(-x * x) * hermite(m, std::sqrt(2.0) * x);
                return u * u;
            },
            -12.0, 12.0);
        EXPECT_NEAR(v, 1.0, 1e-12) << "m=" << m;
    }
}

class PdeResidual : public ::testing::TestWithParam<ModeSpec> {};

TEST_P(PdeResidual, SatisfiesReducedEquation) {
    const auto mode = GetParam();
    for (double A : {0.0, 0.4, -0.25})
        for (double zeta : {0.3, 1.1})
            for (double x : {-0.8, 0.2, 1.0})
                for (double y : {-0.5, 0.6}) {
                    const cplx r = pde_residual(mode, A, zeta, x, y);
                    EXPECT_LT(std::abs(r), 2e-5) << "A=" << A << " zeta=" << zeta;
                }
}

INSTANTIATE_TEST_SUITE_P(Modes, PdeResidual,
                         ::testing::Values(ModeSpec::hg(0, 0), ModeSpec::hg(2, 1), ModeSpec::lg(1, 0), ModeSpec::lg(-2, 1),
                                           ModeSpec::hg(1, 0, 0.5, -0.3)));

TEST(Analytic, LgMatchesPolarForm) {
    const Grid2D g(64, 64, 5.0, 5.0);
    for (auto [ell, p] : {std::pair{1, 0}, {-2, 1}, {2, 2}, {0, 1}}) {
        const auto mode = ModeSpec::lg(ell, p);
        const auto direct = lg_initial(mode, g);
        const auto super = lg_propagated(mode, 0.0, 0.0, g);
        EXPECT_LT(l2_distance(direct, super), 1e-12) << ell << "," << p;
        // Independent polar-form evaluation.
        const int al = std::abs(ell);
        const double c = std::sqrt(2.0 * std::tgamma(p + 1) / (kPi * std::tgamma(p + al + 1)));
        for (double x : {-1.1, 0.4})
            for (double y : {0.3, -0.9}) {
                const double r2 = x * x + y * y;
                const cplx expect = c * std::pow(std::sqrt(2.0 * r2), al) * laguerre(p, al, 2 * r2) * std::exp(-r2) *
                                    std::polar(1.0, ell * std::atan2(y, x));
                EXPECT_NEAR(std::abs(mode_value(mode, 0.0, 0.0, x, y) - expect), 0.0, 1e-13);
            }
    }
}

TEST(Analytic, LgCoefficientsAreUnitary) {
    for (auto [ell, p] : {std::pair{3, 0}, {-1, 2}, {2, 2}}) {
        double s = 0.0;
        for (const auto& t : lg_from_hg_coeffs(ell, p)) {
            s += std::norm(t.coeff);
            EXPECT_EQ(t.m + t.n, 2 * p + std::abs(ell));
        }
        EXPECT_NEAR(s, 1.0, 1e-14);
    }
    const auto c = lg_from_hg_coeffs(1, 0);
    ASSERT_EQ(c.size(), 2u);
}

TEST(Analytic, SampleDerivativesMatchFiniteDifferences) {
    const auto mode = ModeSpec::lg(2, 1, 0.3, -0.2);
    const double A = 0.4, zeta = 0.8, h = 1e-5;
    for (double x : {-0.7, 0.5})
        for (double y : {0.1, 1.2}) {
            const auto s = mode_sample(mode, A, zeta, x, y);
            const cplx fx = (mode_value(mode, A, zeta, x + h, y) - mode_value(mode, A, zeta, x - h, y)) / (2 * h);
            const cplx fy = (mode_value(mode, A, zeta, x, y + h) - mode_value(mode, A, zeta, x, y - h)) / (2 * h);
            EXPECT_NEAR(std::abs(s.d_dx - fx), 0.0, 1e-8);
            EXPECT_NEAR(std::abs(s.d_dy - fy), 0.0, 1e-8);
            EXPECT_EQ(s.value, mode_value(mode, A, zeta, x, y));
        }
}

TEST(Analytic, GridFieldsNormalized) {
    const Grid2D g(128, 128, 8.0, 8.0);
    for (const auto& mode : {ModeSpec::hg(2, 1), ModeSpec::lg(2, 2)}) {
        EXPECT_NEAR(initial_field(mode, g).norm2(), 1.0, 1e-12);
        EXPECT_NEAR(propagated_field(mode, 0.4, 1.0, g).norm2(), 1.0, 1e-10);
    }
}

TEST(Analytic, GridTooSmallRejected) {
    const Grid2D tiny(16, 16, 1.0, 1.0);
    EXPECT_THROW(hg_initial(ModeSpec::hg(0, 0), tiny), NumericalGuardError);
    EXPECT_THROW(lg_initial(ModeSpec::lg(3, 0), tiny), NumericalGuardError);
}

TEST(Analytic, OffsetModeIsTranslated) {
    const double x0 = 0.7, A = 0.3, zeta = 1.2;
    const auto shifted = ModeSpec::hg(1, 0, x0, 0.0);
    for (double x : {-0.5, 0.9}) {
        const cplx expect = mode_value(ModeSpec::hg(1, 0), A, zeta, x - x0, 0.2) * std::polar(1.0, -2.0 * A * x0 * zeta);
        EXPECT_NEAR(std::abs(mode_value(shifted, A, zeta, x, 0.2) - expect), 0.0, 1e-14);
    }
}

TEST(Kernels, FreeKernelReproducesGaussian) {
    // int K_x(x, x') e^{-x'^2} dx' = e^{-x^2/(1 + i zeta)} / sqrt(1 + i zeta).
    const double zeta = 0.9;
    for (double x : {0.0, 0.8}) {
        const cplx v = integrate<cplx>([&](double xp) { return kernel_x(x, xp, 0.0, zeta) * std::exp(-xp * xp); }, -12, 12);
        const cplx q{1.0, zeta};
        EXPECT_NEAR(std::abs(v - std::exp(-x * x / q) / std::sqrt(q)), 0.0, 1e-11);
    }
}

TEST(Kernels, LinearPotentialKernelMatchesHgFactor) {
    const double A = 0.4, zeta = 1.3, n0 = hg_norm_1d(0);
    for (double x : {-1.0, 0.3}) {
        const cplx v = integrate<cplx>([&](double xp) { return kernel_x(x, xp, A, zeta) * n0 * std::exp(-xp * xp); }, -12, 12);
        EXPECT_NEAR(std::abs(v - hg_factor(0, x, A, zeta)), 0.0, 1e-11);
    }
    EXPECT_THROW(kernel_x(0.0, 0.0, A, 0.0), std::invalid_argument);
    EXPECT_THROW(kernel_y(0.0, 0.0, 1e-9), std::invalid_argument);
}

TEST(Analytic, PhaseTermsAndCentroid) {
    EXPECT_DOUBLE_EQ(classical_centroid(0.4, 2.0), -0.8);
    EXPECT_DOUBLE_EQ(classical_centroid(0.4, 2.0, 1.0), 0.2);
    EXPECT_DOUBLE_EQ(t3_phase(0.5, 2.0), 0.25 * 8.0 / 3.0);
    const auto t = propagated_terms(ModeSpec::hg(2, 1), 0.4, 1.0);
    EXPECT_DOUBLE_EQ(t.centroid_shift, 0.2);
    EXPECT_DOUBLE_EQ(t.tilt_phase_coeff, 0.8);
    EXPECT_NEAR(std::arg(t.gouy_factor), -3.0 * std::atan(1.0), 1e-15);
}
