#include "sqw/spectral.hpp"

#include "sqw/errors.hpp"
#include "sqw/quadrature.hpp"
#include "sqw/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sqw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxSamples = 20000;

double airy_scale(double A) { return std::cbrt(8.0 * A); }

// Edge allowance, in beam widths, for an HG factor of order m.
double support_widths(int m) { return 4.7 + std::sqrt(2.0 * m + 1.0); }

struct Sampled {
    std::vector<double> s;
    std::vector<cplx> v;
    double tail_ratio = 0.0;
};

// Uniform samples centre + j h covering the coefficient profile until the
// outer 5% on both sides is below tol of the peak.
Sampled sample_profile(const std::function<cplx(double)>& f, double centre, double half_width, double h, double tol) {
    for (;;) {
        const auto J = static_cast<long>(std::ceil(half_width / h));
        if (static_cast<std::size_t>(2 * J + 1) > kMaxSamples)
            throw NumericalGuardError("spectral: coefficient tails not captured within " + std::to_string(kMaxSamples) +
                                      " samples");
        Sampled out;
        for (long j = -J; j <= J; ++j) {
            const double s = centre + static_cast<double>(j) * h;
            out.s.push_back(s);
            out.v.push_back(f(s));
        }
        double peak = 0.0;
        for (const auto& v : out.v) peak = std::max(peak, std::abs(v));
        const std::size_t n = out.v.size();
        const std::size_t edge = std::max<std::size_t>(3, n / 20);
        double tail = 0.0;
        for (std::size_t i = 0; i < edge; ++i) tail = std::max({tail, std::abs(out.v[i]), std::abs(out.v[n - 1 - i])});
        out.tail_ratio = peak > 0.0 ? tail / peak : 0.0;
        if (out.tail_ratio <= tol) return out;
        half_width *= 1.3;
    }
}

// Wavenumber spacing for a plane-wave axis: the 2 pi / dk periodic images
// must stay off [-window, window] for |zeta| <= zeta_max.
double plane_wave_spacing(double window, double offset, int order, double zeta_max) {
    const double support = support_widths(order) * std::sqrt(1.0 + zeta_max * zeta_max);
    return 2.0 * kPi / (window + std::abs(offset) + support);
}

// Energy spacing 2 pi / T with T large enough that the images at zeta - T
// have drifted (|A| (T - zeta)^2 / 2) clear of the window.
double airy_spacing(double A, double window, double offset, int order, double zeta_max) {
    const double s = support_widths(order);
    double T = zeta_max + 1.0;
    auto clear = [&](double t) {
        const double dz = t - zeta_max;
        return std::abs(A) * dz * dz / 2.0 - window - std::abs(offset) >= s * std::sqrt(1.0 + dz * dz);
    };
    while (!clear(T)) T *= 1.05;
    return 2.0 * kPi / T;
}

} // namespace

double eigenstate_x(double epsilon, double A, double x) {
    if (A == 0.0 || !std::isfinite(A)) throw std::invalid_argument("eigenstate_x: A must be non-zero (use plane waves)");
    const double c = airy_scale(A);
    return std::abs(c) / std::sqrt(2.0 * std::abs(A)) * airy_ai(c * (x - epsilon / (2.0 * A)));
}

double expansion_coeff_x(int m, double epsilon, double A, CoeffRoute route) {
    if (m < 0) throw std::invalid_argument("expansion_coeff_x: m must be >= 0");
    if (A == 0.0 || !std::isfinite(A)) throw std::invalid_argument("expansion_coeff_x: A must be non-zero");
    const double nm = hg_norm_1d(m);
    if (route == CoeffRoute::closed_form) {
        const double c = airy_scale(A);
        return nm * airy_transform_hg(m, -1.0 / c, epsilon / (2.0 * A)) / std::sqrt(2.0 * std::abs(A));
    }
    const double L = 7.0 + 0.5 * m;
    QuadratureResult info;
    const double v = integrate<double>(
        [&](double x) { return eigenstate_x(epsilon, A, x) * std::exp(-x * x) * hermite(m, std::sqrt(2.0) * x); }, -L, L,
        1e-15, 1e-13, &info);
    if (!info.converged) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "expansion_coeff_x: quadrature did not converge (m=%d, eps=%g, A=%g, err=%.3g)", m,
                      epsilon, A, info.error_estimate);
        throw NumericalGuardError(buf);
    }
    return nm * v;
}

cplx expansion_coeff_y(int n, double k) {
    if (n < 0) throw std::invalid_argument("expansion_coeff_y: n must be >= 0");
    cplx mi{1.0, 0.0};
    for (int i = 0; i < n % 4; ++i) mi *= cplx{0.0, -1.0};
    return hg_norm_1d(n) * mi * hermite(n, k / std::sqrt(2.0)) * std::exp(-k * k / 4.0) / std::sqrt(2.0);
}

SpectralCoefficients analyze(const ModeSpec& mode, double A, const Grid2D& window, double zeta_max,
                             const AnalyzeOptions& options) {
    mode.validate();
    if (mode.family != ModeFamily::HG) throw std::invalid_argument("analyze: HG mode required (expand LG modes via lg_from_hg_coeffs)");
    if (!(zeta_max >= 0.0) || !std::isfinite(zeta_max)) throw std::invalid_argument("analyze: zeta_max must be >= 0");
    if (!std::isfinite(A)) throw std::invalid_argument("analyze: A must be finite");
    const int m = mode.first, n = mode.second;
    const double x0 = mode.offset_x, y0 = mode.offset_y;

    SpectralCoefficients out;
    out.A = A;
    out.window_x = window.extent_x();
    out.window_y = window.extent_y();
    out.zeta_limit = zeta_max;
    out.tail_tolerance = options.tail_tolerance;

    const double dk = plane_wave_spacing(window.extent_y(), y0, n, zeta_max);
    const auto ys = sample_profile([&](double k) { return expansion_coeff_y(n, k) * std::polar(1.0, -k * y0); }, 0.0,
                                   4.0 + 2.0 * std::sqrt(2.0 * n + 1.0), dk, options.tail_tolerance);
    out.grid.k_y = ys.s;
    out.grid.d_k = dk;
    out.d = ys.v;

    Sampled xs;
    if (A == 0.0) {
        out.grid.x_plane_waves = true;
        const double h = plane_wave_spacing(window.extent_x(), x0, m, zeta_max);
        xs = sample_profile([&](double k) { return expansion_coeff_y(m, k) * std::polar(1.0, -k * x0); }, 0.0,
                            4.0 + 2.0 * std::sqrt(2.0 * m + 1.0), h, options.tail_tolerance);
        out.grid.d_epsilon = h;
    } else {
        const double h = airy_spacing(A, window.extent_x(), x0, m, zeta_max);
        // chi_eps(x + x0) = chi_{eps - 2 A x0}(x)
        const double centre = (2.0 * m + 1.0) / 4.0 + 2.0 * A * x0;
        xs = sample_profile(
            [&](double e) { return cplx{expansion_coeff_x(m, e - 2.0 * A * x0, A, options.route), 0.0}; }, centre,
            2.0 + 2.0 * std::sqrt(2.0 * m + 1.0) * (1.0 + 2.0 * std::abs(A)), h, options.tail_tolerance);
        out.grid.d_epsilon = h;
    }
    out.grid.epsilon = xs.s;
    out.c = xs.v;
    out.tail_ratio = std::max(xs.tail_ratio, ys.tail_ratio);
    return out;
}

SpectralCoefficients evolve_in_eigenbasis(const SpectralCoefficients& coeffs, double delta_zeta) {
    if (!std::isfinite(delta_zeta)) throw std::invalid_argument("evolve_in_eigenbasis: zeta must be finite");
    SpectralCoefficients out = coeffs;
    for (std::size_t i = 0; i < out.c.size(); ++i) {
        const double s = out.grid.epsilon[i];
        const double e = out.grid.x_plane_waves ? s * s / 4.0 : s;
        out.c[i] *= std::polar(1.0, -e * delta_zeta);
    }
    for (std::size_t j = 0; j < out.d.size(); ++j) {
        const double k = out.grid.k_y[j];
        out.d[j] *= std::polar(1.0, -k * k / 4.0 * delta_zeta);
    }
    out.zeta += delta_zeta;
    return out;
}

ComplexField2D reconstruct(const SpectralCoefficients& coeffs, const Grid2D& grid) {
    if (coeffs.tail_ratio > coeffs.tail_tolerance)
        throw NumericalGuardError("reconstruct: coefficient tails exceed the capture tolerance");
    if (grid.extent_x() > coeffs.window_x * (1.0 + 1e-12) || grid.extent_y() > coeffs.window_y * (1.0 + 1e-12))
        throw NumericalGuardError("reconstruct: grid is wider than the window the sampling was chosen for");
    if (std::abs(coeffs.zeta) > coeffs.zeta_limit * (1.0 + 1e-12))
        throw NumericalGuardError("reconstruct: |zeta| exceeds the sampling limit chosen at analysis");
    const auto xs = grid.xs();
    const auto ys = grid.ys();
    const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * kPi);

    std::vector<cplx> fx(xs.size(), cplx{0.0, 0.0}), fy(ys.size(), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < xs.size(); ++i) {
        cplx s{0.0, 0.0};
        for (std::size_t e = 0; e < coeffs.c.size(); ++e) {
            const double basis_re = coeffs.grid.x_plane_waves ? 0.0 : eigenstate_x(coeffs.grid.epsilon[e], coeffs.A, xs[i]);
            const cplx basis = coeffs.grid.x_plane_waves ? std::polar(inv_sqrt_2pi, coeffs.grid.epsilon[e] * xs[i])
                                                         : cplx{basis_re, 0.0};
            s += coeffs.c[e] * basis;
        }
        fx[i] = s * coeffs.grid.d_epsilon;
    }
    for (std::size_t j = 0; j < ys.size(); ++j) {
        cplx s{0.0, 0.0};
        for (std::size_t k = 0; k < coeffs.d.size(); ++k) s += coeffs.d[k] * std::polar(inv_sqrt_2pi, coeffs.grid.k_y[k] * ys[j]);
        fy[j] = s * coeffs.grid.d_k;
    }
    ComplexField2D out(grid, coeffs.zeta);
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ys.size(); ++j) out(i, j) = fx[i] * fy[j];
    return out;
}

namespace {

std::string csv(const char* label, const std::vector<double>& s, const std::vector<cplx>& v) {
    std::string out = std::string(label) + ",re,im\n";
    char buf[96];
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s[i], v[i].real(), v[i].imag());
        out += buf;
    }
    return out;
}

} // namespace

std::string coefficients_csv_x(const SpectralCoefficients& coeffs) {
    return csv(coeffs.grid.x_plane_waves ? "k" : "epsilon", coeffs.grid.epsilon, coeffs.c);
}

std::string coefficients_csv_y(const SpectralCoefficients& coeffs) { return csv("k", coeffs.grid.k_y, coeffs.d); }

} // namespace sqw
