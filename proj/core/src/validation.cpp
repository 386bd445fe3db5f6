#include "sqw/validation.hpp"

#include "sqw/analytic.hpp"
#include "sqw/interfere.hpp"
#include "sqw/numeric.hpp"
#include "sqw/observables.hpp"
#include "sqw/physics.hpp"
#include "sqw/quadrature.hpp"
#include "sqw/spectral.hpp"
#include "sqw/specfun.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace sqw {

namespace {

ValidationCheck check(std::string name, double value, double tol) {
    const bool ok = std::isfinite(value) && value <= tol;
    return {std::move(name), value, tol, ok};
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Least-squares quadratic fit y = c0 + c1 t + c2 t^2, returns c2.
double quadratic_coefficient(const std::vector<double>& t, const std::vector<double>& y) {
    double s[5] = {}, r[3] = {};
    for (std::size_t i = 0; i < t.size(); ++i) {
        double p = 1.0;
        for (int k = 0; k < 5; ++k) {
            if (k < 3) r[k] += p * y[i];
            s[k] += p;
            p *= t[i];
        }
    }
    double m[3][4] = {{s[0], s[1], s[2], r[0]}, {s[1], s[2], s[3], r[1]}, {s[2], s[3], s[4], r[2]}};
    for (int c = 0; c < 3; ++c)
        for (int row = c + 1; row < 3; ++row) {
            const double f = m[row][c] / m[c][c];
            for (int k = c; k < 4; ++k) m[row][k] -= f * m[c][k];
        }
    double x[3];
    for (int row = 2; row >= 0; --row) {
        double v = m[row][3];
        for (int k = row + 1; k < 3; ++k) v -= m[row][k] * x[k];
        x[row] = v / m[row][row];
    }
    return x[2];
}

} // namespace

std::vector<ValidationCheck> run_validation_suite(unsigned threads) {
    std::vector<ValidationCheck> out;

    // Reference values from DLMF tables.
    out.push_back(check("airy_ai(0)", rel(airy_ai(0.0), 0.35502805388781723926), 1e-14));
    out.push_back(check("airy_ai(-5)", rel(airy_ai(-5.0), 0.35076100902411431979), 1e-12));
    out.push_back(check("hermite H2(1)", std::abs(hermite(2, 1.0) - 2.0), 1e-15));

    {
        // Airy transform (1/|a|) int f(x) Ai((y - x)/a) dx against the closed form.
        double worst = 0.0;
        for (double a : {0.9, -0.7})
            for (int m : {0, 2}) {
                const double y = 0.3;
                const double q = integrate<double>(
                    [&](double x) { return std::exp(-x * x) * hermite(m, std::sqrt(2.0) * x) * airy_ai((y - x) / a) / std::abs(a); },
                    -12.0, 12.0, 1e-14, 1e-13);
                worst = std::max(worst, std::abs(q - airy_transform_hg(m, a, y)));
            }
        out.push_back(check("airy transform vs quadrature", worst, 1e-10));
    }

    {
        const Grid2D g(128, 128, 8.0, 8.0);
        const auto mode = ModeSpec::hg(1, 0);
        SplitStepPlan plan{g, 0.4, 32, 0.0, 2, threads};
        const auto num = split_step_propagate(initial_field(mode, g), plan, 1.0);
        out.push_back(check("split-step vs analytic HG(1,0) 128^2", l2_distance_phase_aligned(num, propagated_field(mode, 0.4, 1.0, g)), 1e-6));
    }

    {
        const Grid2D g(64, 64, 8.0, 8.0);
        const auto mode = ModeSpec::hg(0, 1);
        const auto k = kernel_propagate(initial_field(mode, g), 0.3, 1.5, threads);
        out.push_back(check("kernel quadrature vs analytic 64^2", l2_distance(k, propagated_field(mode, 0.3, 1.5, g)), 1e-5));
    }

    {
        const Grid2D g(128, 128, 10.0, 8.0);
        const double A = 0.4;
        std::vector<double> t, xc;
        for (int k = 0; k <= 8; ++k) {
            t.push_back(0.25 * k);
            xc.push_back(center_of_mass(propagated_field(ModeSpec::hg(0, 0), A, t.back(), g)).first);
        }
        out.push_back(check("centroid quadratic coefficient", rel(quadratic_coefficient(t, xc), -A / 2.0), 1e-3));
    }

    {
        const Grid2D g(128, 128, 8.0, 8.0);
        const ParticleBeam unit(1.0, 1.0, 1.0);
        const auto f = propagated_field(ModeSpec::lg(1, 0), 0.4, 1.0, g);
        out.push_back(check("L_z of LG(1,0)", std::abs(oam_expectation(f, OamComponent::z, unit) - 1.0), 1e-4));
    }

    {
        GratingOptions go;
        go.threads = threads;
        const auto r = grating_interferometer(0.1, 2.0, 2.0, go);
        out.push_back(check("grating phase vs A k_T zeta^2/2", rel(r.delta_phi, r.expected), 1e-2));
    }

    {
        const double lambda = 1.8e-10, g = 9.81, m = 1.67492749804e-27, d = 0.03, theta = 0.3, phi = 0.5;
        const double p0 = constants::planck / lambda;
        const double alpha = m * g * std::sin(phi);
        const double pT = p0 * std::tan(theta), z = 2.0 * d;
        const double reduced = pT * m * alpha * z * z / (2.0 * constants::hbar * p0 * p0);
        out.push_back(check("COW phase vs reduced expression", rel(cow_phase(lambda, g, m, d, 0.0, theta, phi), reduced), 1e-10));
    }

    {
        const Grid2D g(64, 64, 8.0, 8.0);
        const auto mode = ModeSpec::hg(1, 0);
        const auto c = analyze(mode, 0.4, g, 1.0);
        const auto f = reconstruct(evolve_in_eigenbasis(c, 1.0), g);
        out.push_back(check("spectral route vs analytic HG(1,0)", l2_distance(f, propagated_field(mode, 0.4, 1.0, g)), 1e-5));
    }

    {
        // Thermal neutron: z_R = pi w0^2 / lambda.
        const double lambda = 1.8e-10, w0 = 1e-6;
        const auto beam = ParticleBeam::from_wavelength(1.67492749804e-27, lambda, w0);
        out.push_back(check("thermal neutron Rayleigh range", rel(rayleigh_range(beam), std::numbers::pi * w0 * w0 / lambda), 1e-12));
    }

    return out;
}

std::string validation_csv(const std::vector<ValidationCheck>& checks) {
    std::string s = "name,value,tolerance,pass\n";
    char buf[64];
    for (const auto& c : checks) {
        s += "\"" + c.name + "\",";
        std::snprintf(buf, sizeof buf, "%.6e,%.1e,", c.value, c.tolerance);
        s += buf;
        s += c.pass ? "true\n" : "false\n";
    }
    return s;
}

} // namespace sqw
