#include "sqw/observables.hpp"

#include "sqw/errors.hpp"
#include "sqw/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sqw {

namespace {

constexpr cplx I{0.0, 1.0};

bool boundary_is_quiet(const ComplexField2D& f) {
    const auto& g = f.grid();
    double peak = 0.0, edge = 0.0;
    for (std::size_t i = 0; i < g.nx(); ++i)
        for (std::size_t j = 0; j < g.ny(); ++j) {
            const double a = std::abs(f(i, j));
            peak = std::max(peak, a);
            if (i == 0 || j == 0 || i + 1 == g.nx() || j + 1 == g.ny()) edge = std::max(edge, a);
        }
    return edge <= 1e-10 * peak;
}

FieldGradient spectral_gradient(const ComplexField2D& f) {
    const auto& g = f.grid();
    const std::size_t pnx = next_power_of_two(2 * g.nx());
    const std::size_t pny = next_power_of_two(2 * g.ny());
    const std::size_t ox = (pnx - g.nx()) / 2, oy = (pny - g.ny()) / 2;
    std::vector<cplx> buf(pnx * pny, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < g.nx(); ++i)
        for (std::size_t j = 0; j < g.ny(); ++j) buf[(i + ox) * pny + j + oy] = f(i, j);
    const Fft2D fft(pnx, pny);
    fft.forward(buf);
    const auto kx = fft_wavenumbers(pnx, g.dx());
    const auto ky = fft_wavenumbers(pny, g.dy());
    std::vector<cplx> bx(buf.size()), by(buf.size());
    for (std::size_t i = 0; i < pnx; ++i)
        for (std::size_t j = 0; j < pny; ++j) {
            bx[i * pny + j] = I * kx[i] * buf[i * pny + j];
            by[i * pny + j] = I * ky[j] * buf[i * pny + j];
        }
    fft.inverse(bx);
    fft.inverse(by);
    FieldGradient out;
    out.spectral = true;
    out.d_dx.resize(g.size());
    out.d_dy.resize(g.size());
    for (std::size_t i = 0; i < g.nx(); ++i)
        for (std::size_t j = 0; j < g.ny(); ++j) {
            out.d_dx[g.index(i, j)] = bx[(i + ox) * pny + j + oy];
            out.d_dy[g.index(i, j)] = by[(i + ox) * pny + j + oy];
        }
    return out;
}

// Fourth-order central differences, second order next to the boundary and
// one-sided at it.
template <class Get>
cplx fd_derivative(Get get, std::size_t i, std::size_t n, double h) {
    if (i >= 2 && i + 2 < n) return (-get(i + 2) + 8.0 * get(i + 1) - 8.0 * get(i - 1) + get(i - 2)) / (12.0 * h);
    if (i >= 1 && i + 1 < n) return (get(i + 1) - get(i - 1)) / (2.0 * h);
    if (i == 0) return (-3.0 * get(0) + 4.0 * get(1) - get(2)) / (2.0 * h);
    return (3.0 * get(n - 1) - 4.0 * get(n - 2) + get(n - 3)) / (2.0 * h);
}

FieldGradient fd_gradient(const ComplexField2D& f) {
    const auto& g = f.grid();
    FieldGradient out;
    out.d_dx.resize(g.size());
    out.d_dy.resize(g.size());
    for (std::size_t i = 0; i < g.nx(); ++i)
        for (std::size_t j = 0; j < g.ny(); ++j) {
            out.d_dx[g.index(i, j)] = fd_derivative([&](std::size_t k) { return f(k, j); }, i, g.nx(), g.dx());
            out.d_dy[g.index(i, j)] = fd_derivative([&](std::size_t k) { return f(i, k); }, j, g.ny(), g.dy());
        }
    return out;
}

struct Moments {
    double norm2 = 0.0;
    double x = 0.0, y = 0.0;       // <x>, <y>
    double kx = 0.0, ky = 0.0;     // <k_x>, <k_y>
};

Moments moments(const ComplexField2D& f, const FieldGradient& grad) {
    const auto& g = f.grid();
    Moments m;
    for (std::size_t i = 0; i < g.nx(); ++i)
        for (std::size_t j = 0; j < g.ny(); ++j) {
            const std::size_t k = g.index(i, j);
            const cplx v = f(i, j);
            const double rho = std::norm(v);
            m.norm2 += rho;
            m.x += g.x(i) * rho;
            m.y += g.y(j) * rho;
            m.kx += std::imag(std::conj(v) * grad.d_dx[k]);
            m.ky += std::imag(std::conj(v) * grad.d_dy[k]);
        }
    const double da = g.cell_area();
    m.norm2 *= da;
    m.x *= da;
    m.y *= da;
    m.kx *= da;
    m.ky *= da;
    return m;
}

} // namespace

std::vector<double> density(const ComplexField2D& field) {
    std::vector<double> out(field.values().size());
    std::transform(field.values().begin(), field.values().end(), out.begin(), [](cplx v) { return std::norm(v); });
    return out;
}

FieldGradient field_gradient(const ComplexField2D& field) {
    return boundary_is_quiet(field) ? spectral_gradient(field) : fd_gradient(field);
}

CurrentField current_density(const ComplexField2D& field) {
    const auto& g = field.grid();
    const auto grad = field_gradient(field);
    CurrentField out{g, std::vector<double>(g.size()), std::vector<double>(g.size()), density(field)};
    const auto v = field.values();
    for (std::size_t k = 0; k < g.size(); ++k) {
        out.jx[k] = 0.5 * std::imag(std::conj(v[k]) * grad.d_dx[k]);
        out.jy[k] = 0.5 * std::imag(std::conj(v[k]) * grad.d_dy[k]);
    }
    return out;
}

std::vector<Streamline> trace_current_lines(const ModeSpec& mode, double A, double zeta_begin, double zeta_end,
                                            const std::vector<std::pair<double, double>>& seeds,
                                            const Grid2D& bounds) {
    mode.validate();
    if (!std::isfinite(zeta_begin) || !std::isfinite(zeta_end) || zeta_end <= zeta_begin)
        throw std::invalid_argument("trace_current_lines: need zeta_end > zeta_begin");
    const double range = zeta_end - zeta_begin;
    const double step = std::min(0.01, range / 1000.0);
    const auto steps = static_cast<long>(std::ceil(range / step - 1e-9));
    const double h = range / static_cast<double>(steps);

    double peak = 0.0;
    for (double rho : density(propagated_field(mode, A, zeta_begin, bounds))) peak = std::max(peak, rho);

    auto velocity = [&](double x, double y, double z) {
        const auto s = mode_sample(mode, A, z, x, y);
        const cplx gx = s.d_dx / s.value;
        const cplx gy = s.d_dy / s.value;
        return std::pair{0.5 * gx.imag(), 0.5 * gy.imag()};
    };

    std::vector<Streamline> out;
    out.reserve(seeds.size());
    for (const auto& [sx, sy] : seeds) {
        Streamline line;
        line.seed = {sx, sy, zeta_begin};
        line.points.push_back(line.seed);
        if (!bounds.contains(sx, sy)) {
            line.status = StreamlineStatus::exited_grid;
            out.push_back(std::move(line));
            continue;
        }
        if (std::norm(mode_value(mode, A, zeta_begin, sx, sy)) < 1e-12 * peak) {
            line.status = StreamlineStatus::rejected_null;
            out.push_back(std::move(line));
            continue;
        }
        double x = sx, y = sy;
        for (long n = 0; n < steps; ++n) {
            const double z = zeta_begin + h * static_cast<double>(n);
            const auto k1 = velocity(x, y, z);
            const auto k2 = velocity(x + 0.5 * h * k1.first, y + 0.5 * h * k1.second, z + 0.5 * h);
            const auto k3 = velocity(x + 0.5 * h * k2.first, y + 0.5 * h * k2.second, z + 0.5 * h);
            const auto k4 = velocity(x + h * k3.first, y + h * k3.second, z + h);
            x += h / 6.0 * (k1.first + 2.0 * k2.first + 2.0 * k3.first + k4.first);
            y += h / 6.0 * (k1.second + 2.0 * k2.second + 2.0 * k3.second + k4.second);
            if (!std::isfinite(x) || !std::isfinite(y) || !bounds.contains(x, y)) {
                line.status = StreamlineStatus::exited_grid;
                break;
            }
            line.points.push_back({x, y, n + 1 == steps ? zeta_end : z + h});
        }
        out.push_back(std::move(line));
    }
    return out;
}

std::pair<double, double> center_of_mass(const ComplexField2D& field) {
    const auto& g = field.grid();
    double n = 0.0, mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < g.nx(); ++i)
        for (std::size_t j = 0; j < g.ny(); ++j) {
            const double rho = std::norm(field(i, j));
            n += rho;
            mx += g.x(i) * rho;
            my += g.y(j) * rho;
        }
    if (!(n > 0.0)) throw NumericalGuardError("center_of_mass: field has zero norm");
    return {mx / n, my / n};
}

double oam_expectation(const ComplexField2D& field, OamComponent component, const ParticleBeam& beam,
                       OamOrigin origin) {
    if (std::abs(field.norm2() - 1.0) > 1e-6) throw std::invalid_argument("oam_expectation: field must be normalized");
    const auto grad = field_gradient(field);
    const auto m = moments(field, grad);
    const double xc = m.x / m.norm2;
    const double yc = m.y / m.norm2;
    const double ox = origin == OamOrigin::center_of_mass ? xc : 0.0;
    const double oy = origin == OamOrigin::center_of_mass ? yc : 0.0;
    const double scale = beam.transverse_scale(); // p0 w0 / hbar
    const double zeta = field.zeta();
    switch (component) {
    case OamComponent::z: {
        const auto& g = field.grid();
        double lz = 0.0;
        for (std::size_t i = 0; i < g.nx(); ++i)
            for (std::size_t j = 0; j < g.ny(); ++j) {
                const std::size_t k = g.index(i, j);
                const cplx v = std::conj(field(i, j));
                lz += (g.x(i) - ox) * std::imag(v * grad.d_dy[k]) - (g.y(j) - oy) * std::imag(v * grad.d_dx[k]);
            }
        return lz * g.cell_area();
    }
    case OamComponent::x: return scale * (m.y - oy * m.norm2) - 0.5 * zeta * scale * m.ky;
    case OamComponent::y: return 0.5 * zeta * scale * m.kx - scale * (m.x - ox * m.norm2);
    }
    throw std::invalid_argument("oam_expectation: unknown component");
}

double gouy_phase(const ComplexField2D& field, const ModeSpec& reference_mode, double A) {
    const double zeta = field.zeta();
    const double model = (reference_mode.order() + 1) * std::atan(zeta);
    auto ref = propagated_field(reference_mode, A, zeta, field.grid());
    ref *= std::polar(1.0, model);
    const cplx ov = inner_product(ref, field);
    const double nrm = std::sqrt(ref.norm2() * field.norm2());
    if (!(std::abs(ov) >= 0.99 * nrm)) {
        throw NumericalGuardError("gouy_phase: overlap with the reference mode is " + std::to_string(std::abs(ov) / nrm) +
                                  " (< 0.99)");
    }
    double phase = -std::arg(ov);
    const double two_pi = 2.0 * std::numbers::pi;
    phase += two_pi * std::round((model - phase) / two_pi);
    return phase;
}

} // namespace sqw
