#include "sqw/interfere.hpp"

#include "sqw/errors.hpp"
#include "sqw/fft.hpp"
#include "sqw/numeric.hpp"
#include "sqw/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sqw {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_pi(double a) { return std::remainder(a, 2.0 * kPi); }

Grid2D grating_default_grid(const ModeSpec& mode, double A, double k_T, double zeta_total) {
    const double width = std::sqrt(1.0 + zeta_total * zeta_total) * std::sqrt(mode.order() + 1.0);
    const double reach = std::abs(k_T) * zeta_total / 4.0 + std::abs(A) * zeta_total * zeta_total / 2.0 +
                         std::max(std::abs(mode.offset_x), std::abs(mode.offset_y));
    const double extent = std::ceil(reach + 4.0 + 3.0 * width);
    std::size_t n = 128;
    while (kPi * static_cast<double>(n) / (2.0 * extent) < 2.0 * (std::abs(k_T) + 6.0)) n *= 2;
    return Grid2D(n, n, extent, extent);
}

ComplexField2D run_arm(const ComplexField2D& start, double A, double k_first, double zeta_total,
                       const GratingOptions& opt) {
    const double half = 0.5 * zeta_total;
    auto f = apply_phase_element(start, {start.zeta(), k_first, 1});
    SplitStepPlan plan{f.grid(), A, opt.steps_per_rayleigh, 0.0, 2, opt.threads};
    SplitStepPropagator prop(plan, f);
    prop.advance(half);
    f = apply_phase_element(prop.field(), {prop.zeta(), -2.0 * k_first, 1});
    SplitStepPropagator prop2(plan, f);
    prop2.advance(half);
    auto out = prop2.field();
    const double kept = out.norm2() / start.norm2();
    if (kept < 0.999) {
        throw NumericalGuardError("grating_interferometer: an arm kept only " + std::to_string(kept) +
                                  " of its norm on the grid; increase extent_x");
    }
    return out;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

ComplexField2D apply_phase_element(const ComplexField2D& field, const PhaseElement& element) {
    if (std::abs(element.zeta_position - field.zeta()) > 1e-12)
        throw std::invalid_argument("apply_phase_element: element is not on the field's zeta plane");
    if (element.sign != 1 && element.sign != -1) throw std::invalid_argument("apply_phase_element: sign must be +-1");
    const auto& g = field.grid();
    if (!(std::abs(element.k_T) < 0.8 * g.nyquist_x()))
        throw NumericalGuardError("apply_phase_element: kick exceeds 80% of the Nyquist wavenumber");
    ComplexField2D out = field;
    const double k = element.sign * element.k_T;
    for (std::size_t i = 0; i < g.nx(); ++i) {
        const cplx ph = std::polar(1.0, k * g.x(i));
        for (std::size_t j = 0; j < g.ny(); ++j) out(i, j) *= ph;
    }
    return out;
}

Interferogram fringe_metrics(const std::vector<double>& x, const std::vector<double>& intensity) {
    const std::size_t n = x.size();
    if (n < 32 || intensity.size() != n) throw std::invalid_argument("fringe_metrics: need >= 32 matching samples");
    const double dx = (x.back() - x.front()) / static_cast<double>(n - 1);
    if (!(dx > 0.0)) throw std::invalid_argument("fringe_metrics: x must be increasing");
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(x[i] - x[i - 1] - dx) > 1e-6 * dx) throw std::invalid_argument("fringe_metrics: x must be uniform");
    for (double v : intensity)
        if (!std::isfinite(v)) throw std::invalid_argument("fringe_metrics: non-finite intensity");

    Interferogram out;
    out.x = x;
    out.intensity = intensity;

    const std::size_t c0 = n / 4, c1 = n - n / 4;
    const auto [mn, mx] = std::minmax_element(intensity.begin() + static_cast<long>(c0), intensity.begin() + static_cast<long>(c1));
    out.visibility = (*mx + *mn) > 0.0 ? std::clamp((*mx - *mn) / (*mx + *mn), 0.0, 1.0) : 0.0;

    double mean = 0.0;
    for (double v : intensity) mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = std::sin(kPi * static_cast<double>(i) / static_cast<double>(n - 1));
        w[i] = s * s;
    }
    const std::size_t M = next_power_of_two(4 * n);
    std::vector<cplx> buf(M, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) buf[i] = w[i] * (intensity[i] - mean);
    Fft1D(M).forward(buf);
    const std::size_t half = M / 2;
    std::vector<double> P(half + 1);
    for (std::size_t i = 0; i <= half; ++i) P[i] = std::norm(buf[i]);

    // Walk off the low-frequency lobe of the envelope.
    std::size_t start = 0;
    double lobe_max = P[0];
    while (start + 1 < half && !(P[start + 1] > P[start] && P[start] < 0.05 * lobe_max)) {
        ++start;
        lobe_max = std::max(lobe_max, P[start]);
    }
    std::size_t ip = start;
    for (std::size_t i = start; i < half; ++i)
        if (P[i] > P[ip]) ip = i;
    if (ip == 0 || ip + 1 > half || !(P[ip] > 0.0)) return out;

    // Extent of the peak lobe, then the strongest other local maximum.
    std::size_t lo = ip, hi = ip;
    while (lo > start && P[lo - 1] <= P[lo]) --lo;
    while (hi + 1 < half && P[hi + 1] <= P[hi]) ++hi;
    double second = 0.0;
    for (std::size_t i = std::max<std::size_t>(start, 1); i < half; ++i) {
        if (i >= lo && i <= hi) continue;
        if (P[i] >= P[i - 1] && P[i] >= P[i + 1]) second = std::max(second, P[i]);
    }

    const double la = std::log(std::max(P[ip - 1], 1e-300));
    const double lb = std::log(P[ip]);
    const double lc = std::log(std::max(P[ip + 1], 1e-300));
    const double denom = la - 2.0 * lb + lc;
    const double delta = denom != 0.0 ? std::clamp(0.5 * (la - lc) / denom, -0.5, 0.5) : 0.0;
    const double f = static_cast<double>(ip) + delta;
    const double k = 2.0 * kPi * f / (static_cast<double>(M) * dx);
    const double spacing = 2.0 * kPi / k;
    const double span = x.back() - x.front();

    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) acc += w[i] * (intensity[i] - mean) * std::polar(1.0, -k * x[i]);

    out.has_dominant_peak = P[ip] >= 3.0 * second && span >= 3.0 * spacing;
    if (out.has_dominant_peak) {
        out.fringe_spacing = spacing;
        out.phase_shift = std::arg(acc);
    }
    return out;
}

GratingResult grating_interferometer(double A, double k_T, double zeta_total, const GratingOptions& options) {
    if (!(zeta_total > 0.0) || !std::isfinite(zeta_total))
        throw std::invalid_argument("grating_interferometer: zeta_total must be > 0");
    if (!std::isfinite(A) || !std::isfinite(k_T)) throw std::invalid_argument("grating_interferometer: non-finite input");
    const Grid2D grid = options.grid ? *options.grid : grating_default_grid(options.mode, A, k_T, zeta_total);
    const auto start = initial_field(options.mode, grid);
    const auto arm1 = run_arm(start, A, k_T, zeta_total, options);
    const auto arm2 = run_arm(start, A, -k_T, zeta_total, options);

    GratingResult res{0.0, 0.5 * A * k_T * zeta_total * zeta_total, {}, (1.0 / std::sqrt(2.0)) * (arm1 + arm2)};
    const double xc = 0.5 * (center_of_mass(arm1).first + center_of_mass(arm2).first);
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < grid.nx(); ++i) {
        const cplx demod = std::polar(1.0, 2.0 * k_T * (grid.x(i) - xc));
        for (std::size_t j = 0; j < grid.ny(); ++j) acc += std::conj(arm2(i, j)) * arm1(i, j) * demod;
    }
    res.delta_phi = std::arg(acc);

    // Density cut through y = 0 (the grid has no node there; average the two central rows).
    const std::size_t j0 = grid.ny() / 2 - 1, j1 = grid.ny() / 2;
    std::vector<double> xs, is;
    for (std::size_t i = 0; i < grid.nx(); ++i) {
        xs.push_back(grid.x(i));
        is.push_back(0.5 * (std::norm(res.output(i, j0)) + std::norm(res.output(i, j1))));
    }
    res.fringes = fringe_metrics(xs, is);
    return res;
}

double cow_phase(double lambda_dB, double g, double mass, double d, double a, double theta, double phi) {
    if (lambda_dB < 0.0 || d < 0.0 || a < 0.0) throw std::invalid_argument("cow_phase: lengths must be >= 0");
    if (!(std::abs(theta) < 0.5 * kPi)) throw std::invalid_argument("cow_phase: |theta| must be < pi/2");
    const double h = constants::planck;
    return 4.0 * kPi * lambda_dB * g * mass * mass * d * (d + a * std::cos(theta)) * std::tan(theta) * std::sin(phi) /
           (h * h);
}

VortexResult vortex_interfere(int ell, int p, double d, double A, double zeta, const VortexOptions& options) {
    if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("vortex_interfere: separation must be > 0");
    if (p < 0) throw std::invalid_argument("vortex_interfere: p must be >= 0");
    if (options.cut_samples < 32) throw std::invalid_argument("vortex_interfere: need >= 32 cut samples");
    const ModeSpec m1 = ModeSpec::lg(ell, p, -d, 0.0);
    const ModeSpec m2 = ModeSpec::lg(-ell, p, d, 0.0);
    const double w = std::sqrt(1.0 + zeta * zeta);
    const double ring = std::sqrt((2.0 * p + std::abs(ell) + 1.0) / 2.0) * w;

    Grid2D grid = options.grid ? *options.grid : [&] {
        const double extent = std::ceil(d + std::abs(A) * zeta * zeta / 2.0 + ring + 4.0 * w);
        return Grid2D(256, 256, extent, extent);
    }();
    ComplexField2D field = lg_propagated(m1, A, zeta, grid) + lg_propagated(m2, A, zeta, grid);
    const double raw_norm2 = field.norm2();
    if (!(raw_norm2 > 0.0)) throw NumericalGuardError("vortex_interfere: grid misses both beams");
    const double amp = 1.0 / std::sqrt(raw_norm2);
    field *= amp;

    // y of maximal overlap on the lab x = 0 line.
    double y_cut = 0.0, best = -1.0;
    const int ny_scan = 2001;
    const double ymax = ring + 3.0 * w;
    for (int k = 0; k < ny_scan; ++k) {
        const double y = -ymax + 2.0 * ymax * k / (ny_scan - 1);
        const double v = std::norm(mode_value(m1, A, zeta, 0.0, y)) * std::norm(mode_value(m2, A, zeta, 0.0, y));
        if (v > best + 1e-300) {
            best = v;
            y_cut = y;
        }
    }
    if (std::abs(y_cut) < 1e-12) y_cut = 0.0;

    std::vector<double> xs(options.cut_samples), is(options.cut_samples);
    double cut_peak = 0.0;
    for (std::size_t k = 0; k < options.cut_samples; ++k) {
        xs[k] = -d + 2.0 * d * static_cast<double>(k) / static_cast<double>(options.cut_samples - 1);
        const cplx v = amp * (mode_value(m1, A, zeta, xs[k], y_cut) + mode_value(m2, A, zeta, xs[k], y_cut));
        is[k] = std::norm(v);
        cut_peak = std::max(cut_peak, is[k]);
    }
    double peak = 0.0;
    for (double rho : density(field)) peak = std::max(peak, rho);
    if (cut_peak < 1e-6 * peak) {
        throw NumericalGuardError("vortex_interfere: beams do not overlap at x = 0 (crossing intensity " +
                                  std::to_string(cut_peak / peak) + " of peak); increase zeta");
    }
    return {std::move(field), fringe_metrics(xs, is), y_cut};
}

VortexSensitivity vortex_sensitivity(int ell, int p, double d, double zeta, const std::vector<double>& A_values,
                                     const VortexOptions& options) {
    if (A_values.size() < 2) throw std::invalid_argument("vortex_sensitivity: need at least two A values");
    VortexSensitivity out;
    for (std::size_t k = 0; k < A_values.size(); ++k) {
        if (k > 0 && !(A_values[k] > A_values[k - 1]))
            throw std::invalid_argument("vortex_sensitivity: A values must increase");
        const auto r = vortex_interfere(ell, p, d, A_values[k], zeta, options);
        if (!r.fringes.has_dominant_peak)
            throw NumericalGuardError("vortex_sensitivity: no dominant fringe peak for ell = " + std::to_string(ell));
        double ph = r.fringes.phase_shift;
        if (k == 0) out.spacing = r.fringes.fringe_spacing;
        else ph = out.phases.back() + wrap_pi(ph - out.phases.back());
        out.phases.push_back(ph);
    }
    out.phase_rate = least_squares_slope(A_values, out.phases);
    return out;
}

} // namespace sqw
