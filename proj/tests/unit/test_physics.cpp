#include "sqw/errors.hpp"
#include "sqw/physics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace sqw;

namespace {
constexpr double kNeutronMass = 1.67492749804e-27;
}

TEST(Beam, RejectsNonPositiveParameters) {
    EXPECT_THROW(ParticleBeam(0.0, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(ParticleBeam(1.0, -1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(ParticleBeam(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST(Beam, ThermalNeutronRayleighRange) {
    // z_R = pi w0^2 / lambda for p0 = h / lambda.
    const double lambda = 1.8e-10, w0 = 2e-6;
    const auto beam = ParticleBeam::from_wavelength(kNeutronMass, lambda, w0);
    EXPECT_NEAR(rayleigh_range(beam) / (std::numbers::pi * w0 * w0 / lambda), 1.0, 1e-14);
    EXPECT_NEAR(beam.de_broglie_wavelength() / lambda, 1.0, 1e-14);
    EXPECT_NEAR(beam.transverse_scale(), 2.0 * rayleigh_range(beam) / w0, 1e-6 * beam.transverse_scale());
}

TEST(Beam, ReducedStrengthMatchesDefinition) {
    const ParticleBeam beam(kNeutronMass, 3.7e-24, 5e-6);
    const double alpha = kNeutronMass * 9.81;
    const double zr = rayleigh_range(beam);
    const double expected = alpha * beam.mass() * zr * zr / (beam.p0() * beam.p0() * beam.w0());
    const auto spec = nondimensionalize(beam, alpha);
    EXPECT_NEAR(spec.A / expected, 1.0, 1e-13);
    EXPECT_NEAR(alpha_from_reduced(beam, spec.A) / alpha, 1.0, 1e-13);
    EXPECT_NEAR(spec.tau(beam), 2.0 * beam.mass() * alpha / (constants::hbar * constants::hbar),
                1e-12 * spec.tau(beam));
}

TEST(Beam, ZetaRoundTrip) {
    const ParticleBeam beam(1e-26, 1e-23, 1e-5);
    EXPECT_NEAR(z_from_zeta(beam, zeta_from_z(beam, 0.37)), 0.37, 1e-15);
}

TEST(Grid, CellCentredAndSymmetric) {
    const Grid2D g(8, 10, 2.0, 1.0);
    EXPECT_DOUBLE_EQ(g.dx(), 0.5);
    EXPECT_DOUBLE_EQ(g.x(0), -1.75);
    EXPECT_DOUBLE_EQ(g.x(7), 1.75);
    EXPECT_NEAR(g.y(0) + g.y(9), 0.0, 1e-15);
    EXPECT_EQ(g.index(2, 3), 23u);
    EXPECT_DOUBLE_EQ(g.nyquist_x(), std::numbers::pi / 0.5);
}

TEST(Grid, MakeGridEnforcesContract) {
    EXPECT_THROW(make_grid(7, 8, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(make_grid(8, 6, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(make_grid(8, 8, 0.0, 1.0), std::invalid_argument);
    EXPECT_NO_THROW(make_grid(8, 8, 1.0, 1.0));
}

TEST(Field, NormalizeAndInnerProduct) {
    const Grid2D g(16, 16, 4.0, 4.0);
    ComplexField2D f(g);
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) f(i, j) = {std::exp(-g.x(i) * g.x(i)), 0.3 * g.y(j)};
    f.normalize();
    EXPECT_TRUE(f.is_normalized());
    EXPECT_NEAR(std::abs(inner_product(f, f) - cplx{1.0, 0.0}), 0.0, 1e-14);

    ComplexField2D zero(g);
    EXPECT_THROW(zero.normalize(), NumericalGuardError);
}

TEST(Field, PhaseAlignedDistanceIgnoresGlobalPhase) {
    const Grid2D g(16, 16, 4.0, 4.0);
    ComplexField2D f(g);
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) f(i, j) = std::exp(-(g.x(i) * g.x(i) + g.y(j) * g.y(j)) / 2.0);
    const auto rotated = std::polar(1.0, 0.7) * f;
    EXPECT_GT(l2_distance(f, rotated), 0.1);
    EXPECT_NEAR(l2_distance_phase_aligned(f, rotated), 0.0, 1e-14);
}

TEST(Field, MismatchedGridsRejected) {
    const ComplexField2D a(Grid2D(8, 8, 1.0, 1.0)), b(Grid2D(16, 8, 1.0, 1.0));
    EXPECT_THROW(inner_product(a, b), std::invalid_argument);
}
