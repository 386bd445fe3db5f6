#include "sqw/quadrature.hpp"
#include "sqw/specfun.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace sqw;

namespace {

struct AiryRef {
    double x, ai, aip;
};

// 20-digit values from an arbitrary-precision evaluation.
constexpr AiryRef kAiry[] = {
    {0.0, 0.35502805388781723926, -0.25881940379280679840},
    {1.0, 0.13529241631288141552, -0.15914744129679321279},
    {-1.0, 0.5355608832923521188, -0.010160567116645209395},
    {3.7, 0.0017455720006099785209, -0.0034669407490276270702},
    {-7.3, 0.33577037051514727697, -0.18009580448329365985},
    {10.0, 1.1047532552898685934e-10, -3.5206336767389236366e-10},
    {-10.0, 0.040241238486443190689, 0.9962650441327900559},
    {25.0, 8.1160268246913866838e-38, -4.0660893372432810053e-37},
    {-40.0, -0.045933923437957249632, -1.389090875260718381},
};

} // namespace

TEST(Airy, MatchesHighPrecisionReference) {
    for (const auto& r : kAiry) {
        EXPECT_NEAR(airy_ai(r.x), r.ai, 1e-13 * std::abs(r.ai)) << "x=" << r.x;
        EXPECT_NEAR(airy_ai_prime(r.x), r.aip, 1e-12 * std::abs(r.aip)) << "x=" << r.x;
        const auto p = airy_ai_pair(r.x);
        EXPECT_EQ(p.ai, airy_ai(r.x));
        EXPECT_EQ(p.aip, airy_ai_prime(r.x));
    }
}

TEST(Airy, SatisfiesAiryEquation) {
    for (double x = -12.0; x <= 12.0; x += 0.37) {
        const double ai = airy_ai(x);
        EXPECT_NEAR(airy_ai_derivative(2, x), x * ai, 1e-12 * (1.0 + std::abs(x * ai)));
    }
}

TEST(Airy, DerivativesMatchFiniteDifferences) {
    const double h = 1e-4;
    for (int k = 1; k <= 6; ++k)
        for (double x : {-4.2, -1.1, 0.0, 0.8, 3.3}) {
            const double fd = (airy_ai_derivative(k - 1, x + h) - airy_ai_derivative(k - 1, x - h)) / (2.0 * h);
            EXPECT_NEAR(airy_ai_derivative(k, x), fd, 1e-6) << "k=" << k << " x=" << x;
        }
}

TEST(Hermite, RecurrenceHolds) {
    for (int m = 1; m < 20; ++m)
        for (double x : {-5.0, -2.5, 0.3, 1.7, 5.0}) {
            const double r = hermite(m + 1, x) - 2 * x * hermite(m, x) + 2 * m * hermite(m - 1, x);
            EXPECT_LE(std::abs(r), 1e-9 * (std::abs(hermite(m + 1, x)) + 2 * std::abs(x * hermite(m, x))));
        }
}

TEST(Hermite, ExplicitPolynomials) {
    for (double x : {-1.3, 0.0, 0.4, 2.2}) {
        EXPECT_DOUBLE_EQ(hermite(0, x), 1.0);
        EXPECT_NEAR(hermite(3, x), 8 * x * x * x - 12 * x, 1e-12);
        EXPECT_NEAR(hermite(4, x), 16 * std::pow(x, 4) - 48 * x * x + 12, 1e-11);
    }
    const std::complex<double> z{0.3, -0.8};
    EXPECT_NEAR(std::abs(hermite(2, z) - (4.0 * z * z - 2.0)), 0.0, 1e-14);
    EXPECT_THROW(hermite(-1, 0.5), std::invalid_argument);
}

TEST(Laguerre, ExplicitPolynomials) {
    for (double x : {0.0, 0.7, 3.1}) {
        EXPECT_NEAR(laguerre(2, 1, x), x * x / 2 - 3 * x + 3, 1e-13);
        EXPECT_NEAR(laguerre(1, 3, x), 4 - x, 1e-14);
    }
}

TEST(Binomial, SmallValues) {
    EXPECT_EQ(binomial(5, 2), 10.0);
    EXPECT_EQ(binomial(6, 0), 1.0);
    EXPECT_EQ(binomial(4, 5), 0.0);
}

TEST(AiryTransform, ClosedFormMatchesQuadrature) {
    for (double a : {0.7, -0.9, 1.5})
        for (int m = 0; m <= 4; ++m)
            for (double y : {-1.5, 0.0, 0.8}) {
                const double q = integrate<double>(
                    [&](double x) {
                        return std::exp(-x * x) * hermite(m, std::sqrt(2.0) * x) * airy_ai((y - x) / a) / std::abs(a);
                    },
                    -12.0, 12.0, 1e-14, 1e-13);
                EXPECT_NEAR(airy_transform_hg(m, a, y), q, 1e-10 * (1.0 + std::abs(q)))
                    << "a=" << a << " m=" << m << " y=" << y;
            }
    EXPECT_EQ(airy_transform_gaussian(0.8, 0.1), airy_transform_hg(0, 0.8, 0.1));
    EXPECT_EQ(airy_transform_hg({0.8, 2}, 0.1), airy_transform_hg(2, 0.8, 0.1));
}

TEST(AiryTransform, PreservesTotalIntegral) {
    // The kernel Ai integrates to one, so the transform keeps the integral of f.
    for (int m : {0, 2}) {
        const double a = 0.7;
        const double lhs = integrate<double>([&](double y) { return airy_transform_hg(m, a, y); }, -60.0, 12.0, 1e-12, 1e-10);
        const double rhs = integrate<double>([&](double x) { return std::exp(-x * x) * hermite(m, std::sqrt(2.0) * x); },
                                             -12.0, 12.0);
        EXPECT_NEAR(lhs, rhs, 1e-6) << "m=" << m;
    }
}

TEST(AiryTransform, ZeroScaleRejected) {
    EXPECT_THROW(airy_transform_hg(0, 0.0, 1.0), std::invalid_argument);
}

TEST(Quadrature, GaussianIntegral) {
    QuadratureResult info;
    const double v = integrate<double>([](double x) { return std::exp(-x * x); }, -10.0, 10.0, 1e-14, 1e-14, &info);
    EXPECT_NEAR(v, std::sqrt(std::numbers::pi), 1e-14);
    EXPECT_TRUE(info.converged);
}
