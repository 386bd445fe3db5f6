#include "sqw/numeric.hpp"

#include "sqw/analytic.hpp"
#include "sqw/errors.hpp"
#include "sqw/fft.hpp"
#include "sqw/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sqw {

namespace {

constexpr double kNyquistFraction = 0.8;
constexpr double kNyquistTolerance = 1e-10;
constexpr double kAbsorberStrength = 40.0;

double tail_fraction(std::span<const cplx> spectrum, const std::vector<double>& kx, const std::vector<double>& ky,
                     double kx_max, double ky_max) {
    double total = 0.0, tail = 0.0;
    const std::size_t ny = ky.size();
    for (std::size_t i = 0; i < kx.size(); ++i) {
        const bool xt = std::abs(kx[i]) > kx_max;
        for (std::size_t j = 0; j < ny; ++j) {
            const double p = std::norm(spectrum[i * ny + j]);
            total += p;
            if (xt || std::abs(ky[j]) > ky_max) tail += p;
        }
    }
    return total > 0.0 ? tail / total : 0.0;
}

} // namespace

void SplitStepPlan::validate() const {
    if (steps_per_rayleigh < 16) throw std::invalid_argument("SplitStepPlan: steps_per_rayleigh must be >= 16");
    if (!(absorber_width >= 0.0 && absorber_width < 0.5))
        throw std::invalid_argument("SplitStepPlan: absorber_width must be in [0, 0.5)");
    if (pad_factor < 1) throw std::invalid_argument("SplitStepPlan: pad_factor must be >= 1");
    if (!std::isfinite(A)) throw std::invalid_argument("SplitStepPlan: A must be finite");
}

double spectral_tail_fraction(const ComplexField2D& field, double fraction) {
    const auto& g = field.grid();
    std::vector<cplx> buf(field.values().begin(), field.values().end());
    Fft2D(g.nx(), g.ny()).forward(buf);
    return tail_fraction(buf, fft_wavenumbers(g.nx(), g.dx()), fft_wavenumbers(g.ny(), g.dy()),
                         fraction * g.nyquist_x(), fraction * g.nyquist_y());
}

struct SplitStepPropagator::Impl {
    SplitStepPlan plan;
    Grid2D padded;
    std::size_t off_x = 0, off_y = 0;
    Fft2D fft;
    std::vector<double> kx, ky, xs;
    std::vector<double> absorb_x, absorb_y; // per-unit-zeta absorption rates
    std::vector<cplx> state;                // position space
    double zeta = 0.0;

    Impl(SplitStepPlan p, const Grid2D& pg)
        : plan(std::move(p)), padded(pg), fft(pg.nx(), pg.ny()), kx(fft_wavenumbers(pg.nx(), pg.dx())),
          ky(fft_wavenumbers(pg.ny(), pg.dy())), xs(pg.xs()) {
        off_x = (pg.nx() - plan.grid.nx()) / 2;
        off_y = (pg.ny() - plan.grid.ny()) / 2;
        absorb_x = ramp(pg.nx(), pg.xs(), pg.extent_x());
        absorb_y = ramp(pg.ny(), pg.ys(), pg.extent_y());
    }

    std::vector<double> ramp(std::size_t n, const std::vector<double>& c, double extent) const {
        std::vector<double> r(n, 0.0);
        if (plan.absorber_width <= 0.0) return r;
        const double width = plan.absorber_width * extent;
        for (std::size_t i = 0; i < n; ++i) {
            const double depth = std::abs(c[i]) - (extent - width);
            if (depth > 0.0) {
                // sin^4 rather than sin^2: the ramp onset is C^3, so the mask
                // does not leak power past the Nyquist guard.
                const double s = std::sin(0.5 * std::numbers::pi * depth / width);
                r[i] = kAbsorberStrength * s * s * s * s;
            }
        }
        return r;
    }

    void kinetic(double h) {
        // exp(-i k^2 h / 4) factorizes over the two axes.
        const std::size_t ny = ky.size();
        std::vector<cplx> fy(ny);
        for (std::size_t j = 0; j < ny; ++j) fy[j] = std::polar(1.0, -0.25 * ky[j] * ky[j] * h);
        parallel_for(kx.size(), plan.threads, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                const cplx fx = std::polar(1.0, -0.25 * kx[i] * kx[i] * h);
                for (std::size_t j = 0; j < ny; ++j) state[i * ny + j] *= fx * fy[j];
            }
        });
    }

    void potential(double h) {
        const std::size_t ny = ky.size();
        const bool absorbing = plan.absorber_width > 0.0;
        parallel_for(xs.size(), plan.threads, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                const cplx ph = std::polar(1.0, -2.0 * plan.A * xs[i] * h);
                for (std::size_t j = 0; j < ny; ++j) {
                    cplx f = ph;
                    if (absorbing) f *= std::exp(-(absorb_x[i] + absorb_y[j]) * std::abs(h));
                    state[i * ny + j] *= f;
                }
            }
        });
    }

    double tail() const {
        return tail_fraction(state, kx, ky, kNyquistFraction * padded.nyquist_x(), kNyquistFraction * padded.nyquist_y());
    }
};

SplitStepPropagator::SplitStepPropagator(SplitStepPlan plan, const ComplexField2D& initial) {
    plan.validate();
    if (!(initial.grid() == plan.grid)) throw std::invalid_argument("SplitStepPropagator: field is not on the plan grid");
    const auto& g = plan.grid;
    const std::size_t pnx = next_power_of_two(g.nx() * static_cast<std::size_t>(plan.pad_factor));
    const std::size_t pny = next_power_of_two(g.ny() * static_cast<std::size_t>(plan.pad_factor));
    const Grid2D padded(pnx, pny, g.extent_x() * static_cast<double>(pnx) / static_cast<double>(g.nx()),
                        g.extent_y() * static_cast<double>(pny) / static_cast<double>(g.ny()));
    impl_ = std::make_unique<Impl>(std::move(plan), padded);
    impl_->zeta = initial.zeta();
    impl_->state.assign(padded.size(), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < g.nx(); ++i)
        for (std::size_t j = 0; j < g.ny(); ++j)
            impl_->state[(i + impl_->off_x) * pny + (j + impl_->off_y)] = initial(i, j);

    std::vector<cplx> spec = impl_->state;
    impl_->fft.forward(spec, impl_->plan.threads);
    const double t = tail_fraction(spec, impl_->kx, impl_->ky, kNyquistFraction * padded.nyquist_x(),
                                   kNyquistFraction * padded.nyquist_y());
    if (t > kNyquistTolerance) {
        throw NumericalGuardError("split-step: input has " + std::to_string(t) +
                                  " of its power above 80% of Nyquist; refine the grid");
    }
}

SplitStepPropagator::~SplitStepPropagator() = default;
SplitStepPropagator::SplitStepPropagator(SplitStepPropagator&&) noexcept = default;
SplitStepPropagator& SplitStepPropagator::operator=(SplitStepPropagator&&) noexcept = default;

void SplitStepPropagator::advance(double delta_zeta) {
    if (!std::isfinite(delta_zeta) || delta_zeta == 0.0)
        throw std::invalid_argument("split-step: delta_zeta must be finite and non-zero");
    auto& s = *impl_;
    const auto steps = static_cast<long>(std::ceil(std::abs(delta_zeta) * s.plan.steps_per_rayleigh - 1e-9));
    const double h = delta_zeta / static_cast<double>(std::max(1L, steps));
    s.fft.forward(s.state, s.plan.threads);
    s.kinetic(0.5 * h);
    for (long n = 0; n < steps; ++n) {
        s.fft.inverse(s.state, s.plan.threads);
        s.potential(h);
        s.fft.forward(s.state, s.plan.threads);
        s.kinetic(n + 1 < steps ? h : 0.5 * h);
    }
    const double t = s.tail();
    s.fft.inverse(s.state, s.plan.threads);
    s.zeta += delta_zeta;
    if (t > kNyquistTolerance) {
        throw NumericalGuardError("split-step: propagated field has " + std::to_string(t) +
                                  " of its power above 80% of Nyquist; refine the grid");
    }
}

double SplitStepPropagator::zeta() const noexcept { return impl_->zeta; }

ComplexField2D SplitStepPropagator::field() const {
    const auto& s = *impl_;
    const auto& g = s.plan.grid;
    ComplexField2D out(g, s.zeta);
    const std::size_t pny = s.padded.ny();
    for (std::size_t i = 0; i < g.nx(); ++i)
        for (std::size_t j = 0; j < g.ny(); ++j) out(i, j) = s.state[(i + s.off_x) * pny + (j + s.off_y)];
    return out;
}

double SplitStepPropagator::padded_norm2() const {
    double sum = 0.0;
    for (const auto& v : impl_->state) sum += std::norm(v);
    return sum * impl_->padded.cell_area();
}

ComplexField2D split_step_propagate(const ComplexField2D& field, const SplitStepPlan& plan, double delta_zeta) {
    SplitStepPropagator prop(plan, field);
    prop.advance(delta_zeta);
    return prop.field();
}

ComplexField2D kernel_propagate(const ComplexField2D& field0, double A, double zeta, unsigned threads) {
    const auto& g = field0.grid();
    if (g.nx() > kernel_grid_cap || g.ny() > kernel_grid_cap) {
        throw std::invalid_argument("kernel_propagate: grid exceeds " + std::to_string(kernel_grid_cap) +
                                    " points per axis");
    }
    if (!(std::abs(zeta) >= kernel_propagate_zeta_min))
        throw std::invalid_argument("kernel_propagate: |zeta| must be >= 1e-3");
    {
        const auto v = field0.values();
        double peak = 0.0;
        for (const auto& c : v) peak = std::max(peak, std::norm(c));
        double rx = 0.0, ry = 0.0;
        for (std::size_t i = 0; i < g.nx(); ++i)
            for (std::size_t j = 0; j < g.ny(); ++j)
                if (std::norm(v[g.index(i, j)]) > 1e-12 * peak) {
                    rx = std::max(rx, std::abs(g.x(i)));
                    ry = std::max(ry, std::abs(g.y(j)));
                }
        const double spread = std::sqrt(1.0 + zeta * zeta);
        const auto clear = [&](double extent, double d, double reach) {
            return std::numbers::pi * std::abs(zeta) / d >= extent + reach;
        };
        if (!clear(g.extent_x(), g.dx(), rx * spread + std::abs(A) * zeta * zeta / 2.0) ||
            !clear(g.extent_y(), g.dy(), ry * spread)) {
            throw NumericalGuardError("kernel_propagate: grid spacing too coarse for the kernel chirp at this zeta");
        }
    }
    const std::size_t nx = g.nx(), ny = g.ny();
    const auto xs = g.xs();
    const auto ys = g.ys();
    std::vector<cplx> kx(nx * nx), ky(ny * ny);
    for (std::size_t a = 0; a < nx; ++a)
        for (std::size_t b = 0; b < nx; ++b) kx[a * nx + b] = kernel_x(xs[a], xs[b], A, zeta) * g.dx();
    for (std::size_t a = 0; a < ny; ++a)
        for (std::size_t b = 0; b < ny; ++b) ky[a * ny + b] = kernel_y(ys[a], ys[b], zeta) * g.dy();

    const auto in = field0.values();
    std::vector<cplx> tmp(nx * ny);
    parallel_for(nx, threads, [&](std::size_t b0, std::size_t e0) {
        for (std::size_t i = b0; i < e0; ++i)
            for (std::size_t j = 0; j < ny; ++j) {
                cplx s{0.0, 0.0};
                for (std::size_t jp = 0; jp < ny; ++jp) s += ky[j * ny + jp] * in[i * ny + jp];
                tmp[i * ny + j] = s;
            }
    });
    ComplexField2D out(g, field0.zeta() + zeta);
    auto ov = out.values();
    parallel_for(nx, threads, [&](std::size_t b0, std::size_t e0) {
        for (std::size_t i = b0; i < e0; ++i)
            for (std::size_t j = 0; j < ny; ++j) {
                cplx s{0.0, 0.0};
                for (std::size_t ip = 0; ip < nx; ++ip) s += kx[i * nx + ip] * tmp[ip * ny + j];
                ov[i * ny + j] = s;
            }
    });
    return out;
}

} // namespace sqw
