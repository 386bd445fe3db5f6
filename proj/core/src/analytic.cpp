#include "sqw/analytic.hpp"

#include "sqw/errors.hpp"
#include "sqw/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sqw {

namespace {

constexpr cplx I{0.0, 1.0};

void check_capture(const ComplexField2D& f, const char* who) {
    const double n2 = f.norm2();
    if (n2 < 0.999) {
        throw NumericalGuardError(std::string(who) + ": grid captures only " + std::to_string(n2) +
                                  " of the mode norm; enlarge the extent");
    }
}

// Everything in u_m that does not depend on x.
cplx hg_prefactor(int m, double A, double zeta) {
    const cplx q{1.0, zeta};
    const double phase = -m * std::atan(zeta) - A * A * zeta * zeta * zeta / 3.0;
    return hg_norm_1d(m) / std::sqrt(q) * std::polar(1.0, phase);
}

std::vector<cplx> factor_samples(int m, const std::vector<double>& xs, double offset, double A, double zeta) {
    std::vector<cplx> out(xs.size());
    const cplx shift_phase = std::polar(1.0, -2.0 * A * offset * zeta);
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = hg_factor(m, xs[i] - offset, A, zeta) * shift_phase;
    return out;
}

} // namespace

void ModeSpec::validate() const {
    if (family == ModeFamily::HG && (first < 0 || second < 0))
        throw std::invalid_argument("ModeSpec: HG indices must be >= 0");
    if (family == ModeFamily::LG && second < 0) throw std::invalid_argument("ModeSpec: LG radial index p must be >= 0");
    if (!std::isfinite(offset_x) || !std::isfinite(offset_y)) throw std::invalid_argument("ModeSpec: offsets must be finite");
}

int ModeSpec::order() const noexcept {
    return family == ModeFamily::HG ? first + second : 2 * second + std::abs(first);
}

PropagatedTerms propagated_terms(const ModeSpec& mode, double A, double zeta) {
    mode.validate();
    PropagatedTerms t;
    t.centroid_shift = reduced::centroid_shift(A, zeta);
    t.tilt_phase_coeff = reduced::tilt_coefficient(A, zeta);
    t.t3_phase = reduced::cubic_phase(A, zeta);
    t.gouy_factor = std::polar(1.0, -mode.order() * std::atan(zeta));
    return t;
}

double hg_norm_1d(int m) {
    if (m < 0) throw std::invalid_argument("hg_norm_1d: m must be >= 0");
    return 1.0 / std::sqrt(std::sqrt(std::numbers::pi / 2.0) * std::pow(2.0, m) * std::tgamma(m + 1.0));
}

cplx hg_factor(int m, double x, double A, double zeta) {
    const double s = x + 0.5 * A * zeta * zeta;
    const cplx q{1.0, zeta};
    const double w = std::sqrt(1.0 + zeta * zeta);
    const cplx envelope = std::exp(-s * s / q + cplx{0.0, -2.0 * A * zeta * x});
    return hg_prefactor(m, A, zeta) * hermite(m, std::sqrt(2.0) * s / w) * envelope;
}

cplx hg_factor_derivative(int m, double x, double A, double zeta) {
    const double s = x + 0.5 * A * zeta * zeta;
    const cplx q{1.0, zeta};
    const double w = std::sqrt(1.0 + zeta * zeta);
    const double xi = std::sqrt(2.0) * s / w;
    const cplx envelope = std::exp(-s * s / q + cplx{0.0, -2.0 * A * zeta * x});
    const double dh = m > 0 ? 2.0 * m * hermite(m - 1, xi) * std::sqrt(2.0) / w : 0.0;
    const cplx bracket = dh + hermite(m, xi) * (-2.0 * s / q - 2.0 * I * A * zeta);
    return hg_prefactor(m, A, zeta) * bracket * envelope;
}

std::vector<HgTerm> lg_from_hg_coeffs(int ell, int p) {
    if (p < 0) throw std::invalid_argument("lg_from_hg_coeffs: p must be >= 0");
    const int al = std::abs(ell);
    const int N = 2 * p + al;
    const int n = p + std::max(-ell, 0);
    const int m = p + std::max(ell, 0);
    std::vector<HgTerm> out;
    cplx ik{1.0, 0.0};
    const double sign = (p % 2 == 0) ? 1.0 : -1.0;
    for (int k = 0; k <= N; ++k) {
        double sum = 0.0;
        for (int j = 0; j <= k; ++j) sum += ((j % 2 == 0) ? 1.0 : -1.0) * binomial(n, j) * binomial(m, k - j);
        const double b = std::sqrt(std::tgamma(N - k + 1.0) * std::tgamma(k + 1.0) /
                                   (std::pow(2.0, N) * std::tgamma(n + 1.0) * std::tgamma(m + 1.0))) *
                         sum;
        if (b != 0.0) out.push_back({N - k, k, sign * ik * b});
        ik *= I;
    }
    return out;
}

FieldSample mode_sample(const ModeSpec& mode, double A, double zeta, double x, double y) {
    mode.validate();
    const double xr = x - mode.offset_x;
    const double yr = y - mode.offset_y;
    const cplx shift_phase = std::polar(1.0, -2.0 * A * mode.offset_x * zeta);
    auto hg_sample = [&](int m, int n) {
        const cplx ux = hg_factor(m, xr, A, zeta) * shift_phase;
        const cplx dux = hg_factor_derivative(m, xr, A, zeta) * shift_phase;
        const cplx uy = hg_factor(n, yr, 0.0, zeta);
        const cplx duy = hg_factor_derivative(n, yr, 0.0, zeta);
        return FieldSample{ux * uy, dux * uy, ux * duy};
    };
    if (mode.family == ModeFamily::HG) return hg_sample(mode.first, mode.second);
    FieldSample acc{};
    for (const auto& t : lg_from_hg_coeffs(mode.first, mode.second)) {
        const auto s = hg_sample(t.m, t.n);
        acc.value += t.coeff * s.value;
        acc.d_dx += t.coeff * s.d_dx;
        acc.d_dy += t.coeff * s.d_dy;
    }
    return acc;
}

cplx mode_value(const ModeSpec& mode, double A, double zeta, double x, double y) {
    return mode_sample(mode, A, zeta, x, y).value;
}

ComplexField2D hg_propagated(const ModeSpec& mode, double A, double zeta, const Grid2D& grid) {
    mode.validate();
    if (mode.family != ModeFamily::HG) throw std::invalid_argument("hg_propagated: HG mode required");
    const auto fx = factor_samples(mode.first, grid.xs(), mode.offset_x, A, zeta);
    const auto fy = factor_samples(mode.second, grid.ys(), mode.offset_y, 0.0, zeta);
    ComplexField2D f(grid, zeta);
    for (std::size_t i = 0; i < grid.nx(); ++i)
        for (std::size_t j = 0; j < grid.ny(); ++j) f(i, j) = fx[i] * fy[j];
    return f;
}

ComplexField2D hg_initial(const ModeSpec& mode, const Grid2D& grid) {
    auto f = hg_propagated(mode, 0.0, 0.0, grid);
    check_capture(f, "hg_initial");
    return f;
}

ComplexField2D lg_propagated(const ModeSpec& mode, double A, double zeta, const Grid2D& grid) {
    mode.validate();
    if (mode.family != ModeFamily::LG) throw std::invalid_argument("lg_propagated: LG mode required");
    const auto xs = grid.xs();
    const auto ys = grid.ys();
    ComplexField2D f(grid, zeta);
    for (const auto& t : lg_from_hg_coeffs(mode.first, mode.second)) {
        const auto fx = factor_samples(t.m, xs, mode.offset_x, A, zeta);
        const auto fy = factor_samples(t.n, ys, mode.offset_y, 0.0, zeta);
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            const cplx cx = t.coeff * fx[i];
            for (std::size_t j = 0; j < grid.ny(); ++j) f(i, j) += cx * fy[j];
        }
    }
    return f;
}

ComplexField2D lg_initial(const ModeSpec& mode, const Grid2D& grid) {
    mode.validate();
    if (mode.family != ModeFamily::LG) throw std::invalid_argument("lg_initial: LG mode required");
    const int ell = mode.first;
    const int p = mode.second;
    const int al = std::abs(ell);
    const double c = std::sqrt(2.0 * std::tgamma(p + 1.0) / (std::numbers::pi * std::tgamma(p + al + 1.0)));
    ComplexField2D f(grid, 0.0);
    for (std::size_t i = 0; i < grid.nx(); ++i) {
        const double x = grid.x(i) - mode.offset_x;
        for (std::size_t j = 0; j < grid.ny(); ++j) {
            const double y = grid.y(j) - mode.offset_y;
            const double r2 = x * x + y * y;
            const double radial = std::pow(std::sqrt(2.0 * r2), al) * laguerre(p, al, 2.0 * r2) * std::exp(-r2);
            f(i, j) = c * radial * std::polar(1.0, ell * std::atan2(y, x));
        }
    }
    check_capture(f, "lg_initial");
    return f;
}

ComplexField2D initial_field(const ModeSpec& mode, const Grid2D& grid) {
    return mode.family == ModeFamily::HG ? hg_initial(mode, grid) : lg_initial(mode, grid);
}

ComplexField2D propagated_field(const ModeSpec& mode, double A, double zeta, const Grid2D& grid) {
    return mode.family == ModeFamily::HG ? hg_propagated(mode, A, zeta, grid) : lg_propagated(mode, A, zeta, grid);
}

cplx kernel_x(double x, double x_prime, double A, double zeta) {
    if (!(std::abs(zeta) >= kernel_zeta_min)) throw std::invalid_argument("kernel_x: |zeta| below the kernel limit");
    const double d = x - x_prime;
    const double f = A * A * zeta * zeta * zeta / 12.0 - d * d / zeta + A * zeta * (x + x_prime);
    return std::polar(1.0, -f) / std::sqrt(I * std::numbers::pi * zeta);
}

cplx kernel_y(double y, double y_prime, double zeta) {
    if (!(std::abs(zeta) >= kernel_zeta_min)) throw std::invalid_argument("kernel_y: |zeta| below the kernel limit");
    const double d = y - y_prime;
    return std::polar(1.0, d * d / zeta) / std::sqrt(I * std::numbers::pi * zeta);
}

double classical_centroid(double A, double zeta, double x0) { return x0 - reduced::centroid_shift(A, zeta); }

double t3_phase(double A, double zeta) { return reduced::cubic_phase(A, zeta); }

} // namespace sqw
