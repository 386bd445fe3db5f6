#include "sqw/physics.hpp"

#include "sqw/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sqw {

ParticleBeam::ParticleBeam(double mass, double p0, double w0) : mass_(mass), p0_(p0), w0_(w0) {
    if (!(mass > 0.0) || !(p0 > 0.0) || !(w0 > 0.0)) {
        throw std::invalid_argument("ParticleBeam: mass, p0 and w0 must be positive");
    }
}

ParticleBeam ParticleBeam::from_wavelength(double mass, double lambda, double w0) {
    if (!(lambda > 0.0)) throw std::invalid_argument("ParticleBeam: wavelength must be positive");
    return ParticleBeam(mass, constants::planck / lambda, w0);
}

double rayleigh_range(const ParticleBeam& beam) {
    return beam.p0() * beam.w0() * beam.w0() / (2.0 * constants::hbar);
}

double PotentialSpec::tau(const ParticleBeam& beam) const {
    return 2.0 * beam.mass() * alpha / (constants::hbar * constants::hbar);
}

PotentialSpec nondimensionalize(const ParticleBeam& beam, double alpha) {
    const double zr = rayleigh_range(beam);
    PotentialSpec spec;
    spec.alpha = alpha;
    spec.A = alpha * beam.mass() * zr * zr / (beam.p0() * beam.p0() * beam.w0());
    return spec;
}

double alpha_from_reduced(const ParticleBeam& beam, double A) {
    const double zr = rayleigh_range(beam);
    return A * beam.p0() * beam.p0() * beam.w0() / (beam.mass() * zr * zr);
}

Grid2D::Grid2D(std::size_t nx, std::size_t ny, double extent_x, double extent_y)
    : nx_(nx), ny_(ny), extent_x_(extent_x), extent_y_(extent_y) {
    if (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0) {
        throw std::invalid_argument("Grid2D: counts must be even and >= 8 (got " + std::to_string(nx) + "x" +
                                    std::to_string(ny) + ")");
    }
    if (!(extent_x > 0.0) || !(extent_y > 0.0) || !std::isfinite(extent_x) || !std::isfinite(extent_y)) {
        throw std::invalid_argument("Grid2D: extents must be positive and finite");
    }
}

std::vector<double> Grid2D::xs() const {
    std::vector<double> out(nx_);
    for (std::size_t i = 0; i < nx_; ++i) out[i] = x(i);
    return out;
}

std::vector<double> Grid2D::ys() const {
    std::vector<double> out(ny_);
    for (std::size_t j = 0; j < ny_; ++j) out[j] = y(j);
    return out;
}

Grid2D make_grid(std::size_t nx, std::size_t ny, double extent_x, double extent_y) {
    return Grid2D(nx, ny, extent_x, extent_y);
}

ComplexField2D::ComplexField2D(Grid2D grid, double zeta)
    : grid_(grid), values_(grid.size(), cplx{0.0, 0.0}), zeta_(zeta) {}

ComplexField2D::ComplexField2D(Grid2D grid, std::vector<cplx> values, double zeta)
    : grid_(grid), values_(std::move(values)), zeta_(zeta) {
    if (values_.size() != grid_.size()) {
        throw std::invalid_argument("ComplexField2D: value count does not match grid");
    }
}

double ComplexField2D::norm2() const noexcept {
    double s = 0.0;
    for (const auto& v : values_) s += std::norm(v);
    return s * grid_.cell_area();
}

bool ComplexField2D::is_normalized(double tol) const noexcept { return std::abs(norm2() - 1.0) <= tol; }

void ComplexField2D::normalize() {
    const double n2 = norm2();
    if (!(n2 > 0.0) || !std::isfinite(n2)) throw NumericalGuardError("normalize: field has zero or non-finite norm");
    const double s = 1.0 / std::sqrt(n2);
    for (auto& v : values_) v *= s;
}

ComplexField2D& ComplexField2D::operator+=(const ComplexField2D& other) {
    if (!(grid_ == other.grid_)) throw std::invalid_argument("ComplexField2D: grid mismatch");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
    return *this;
}

ComplexField2D& ComplexField2D::operator*=(cplx s) noexcept {
    for (auto& v : values_) v *= s;
    return *this;
}

ComplexField2D operator+(ComplexField2D a, const ComplexField2D& b) {
    a += b;
    return a;
}

ComplexField2D operator*(cplx s, ComplexField2D a) {
    a *= s;
    return a;
}

cplx inner_product(const ComplexField2D& a, const ComplexField2D& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("inner_product: grid mismatch");
    cplx s{0.0, 0.0};
    const auto va = a.values();
    const auto vb = b.values();
    for (std::size_t k = 0; k < va.size(); ++k) s += std::conj(va[k]) * vb[k];
    return s * a.grid().cell_area();
}

double l2_distance(const ComplexField2D& a, const ComplexField2D& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("l2_distance: grid mismatch");
    double s = 0.0;
    const auto va = a.values();
    const auto vb = b.values();
    for (std::size_t k = 0; k < va.size(); ++k) s += std::norm(va[k] - vb[k]);
    return std::sqrt(s * a.grid().cell_area());
}

double l2_distance_phase_aligned(const ComplexField2D& a, const ComplexField2D& b) {
    const cplx overlap = inner_product(b, a);
    const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx{1.0, 0.0};
    return l2_distance(a, phase * b);
}

} // namespace sqw
