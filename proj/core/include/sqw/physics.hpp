#pragma once

// Physical parameters, reduced units, and the transverse sampling grid.
//
// Internally everything is dimensionless: transverse lengths in units of the
// waist w0, propagation distance as zeta = z / z_R, and the linear potential
// V = alpha x through the reduced strength A = alpha m z_R^2 / (p0^2 w0).
// In these units the paraxial equation reads
//
//     i d(psi)/d(zeta) = -1/4 Lap(psi) + 2 A x psi.

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace sqw {

using cplx = std::complex<double>;

namespace constants {
inline constexpr double planck = 6.62607015e-34;                  // J s (exact)
inline constexpr double hbar = planck / (2.0 * std::numbers::pi); // J s
} // namespace constants

/// Beam of massive particles with a well defined longitudinal momentum.
class ParticleBeam {
public:
    /// Throws std::invalid_argument unless mass, p0 and w0 are all > 0.
    ParticleBeam(double mass, double p0, double w0);

    /// Convenience: build from the de Broglie wavelength, p0 = h / lambda.
    static ParticleBeam from_wavelength(double mass, double lambda, double w0);

    double mass() const noexcept { return mass_; }
    double p0() const noexcept { return p0_; }
    double w0() const noexcept { return w0_; }

    double de_broglie_wavelength() const noexcept { return constants::planck / p0_; }

    /// Dimensionless ratio p0 w0 / hbar (= 2 z_R / w0), the scale that turns
    /// reduced transverse momenta into physical angular momenta.
    double transverse_scale() const noexcept { return p0_ * w0_ / constants::hbar; }

private:
    double mass_;
    double p0_;
    double w0_;
};

/// z_R = p0 w0^2 / (2 hbar).
double rayleigh_range(const ParticleBeam& beam);

struct PotentialSpec {
    double alpha = 0.0; ///< J/m, V = alpha x
    double A = 0.0;     ///< reduced strength

    /// tau = 2 m alpha / hbar^2 (1/m^3), the Airy scale of the x eigenstates.
    double tau(const ParticleBeam& beam) const;
};

PotentialSpec nondimensionalize(const ParticleBeam& beam, double alpha);

/// Inverse of nondimensionalize(): alpha = A p0^2 w0 / (m z_R^2).
double alpha_from_reduced(const ParticleBeam& beam, double A);

inline double zeta_from_z(const ParticleBeam& beam, double z) { return z / rayleigh_range(beam); }
inline double z_from_zeta(const ParticleBeam& beam, double zeta) { return zeta * rayleigh_range(beam); }

/// Reduced forms of the three potential-induced terms of the propagated field.
namespace reduced {
inline double centroid_shift(double A, double zeta) { return 0.5 * A * zeta * zeta; }
inline double tilt_coefficient(double A, double zeta) { return 2.0 * A * zeta; }
inline double cubic_phase(double A, double zeta) { return A * A * zeta * zeta * zeta / 3.0; }
} // namespace reduced

/// Uniform cell-centred grid, symmetric about the beam axis.
/// extent_x / extent_y are half-widths in units of w0.
class Grid2D {
public:
    Grid2D(std::size_t nx, std::size_t ny, double extent_x, double extent_y);

    std::size_t nx() const noexcept { return nx_; }
    std::size_t ny() const noexcept { return ny_; }
    std::size_t size() const noexcept { return nx_ * ny_; }
    double extent_x() const noexcept { return extent_x_; }
    double extent_y() const noexcept { return extent_y_; }
    double dx() const noexcept { return 2.0 * extent_x_ / static_cast<double>(nx_); }
    double dy() const noexcept { return 2.0 * extent_y_ / static_cast<double>(ny_); }
    double cell_area() const noexcept { return dx() * dy(); }

    double x(std::size_t i) const noexcept { return -extent_x_ + (static_cast<double>(i) + 0.5) * dx(); }
    double y(std::size_t j) const noexcept { return -extent_y_ + (static_cast<double>(j) + 0.5) * dy(); }

    std::vector<double> xs() const;
    std::vector<double> ys() const;

    /// Row-major, x is the slow index: index(i, j) = i * ny + j.
    std::size_t index(std::size_t i, std::size_t j) const noexcept { return i * ny_ + j; }

    /// Largest representable angular wavenumber along each axis, pi / dx.
    double nyquist_x() const noexcept { return std::numbers::pi / dx(); }
    double nyquist_y() const noexcept { return std::numbers::pi / dy(); }

    bool contains(double x, double y) const noexcept {
        return x >= -extent_x_ && x <= extent_x_ && y >= -extent_y_ && y <= extent_y_;
    }

    friend bool operator==(const Grid2D&, const Grid2D&) = default;

private:
    std::size_t nx_;
    std::size_t ny_;
    double extent_x_;
    double extent_y_;
};

/// make_grid from the component contract: counts even and >= 8, extents > 0.
Grid2D make_grid(std::size_t nx, std::size_t ny, double extent_x, double extent_y);

/// Complex amplitude sampled on a Grid2D at propagation coordinate zeta.
class ComplexField2D {
public:
    ComplexField2D(Grid2D grid, double zeta = 0.0);
    ComplexField2D(Grid2D grid, std::vector<cplx> values, double zeta);

    const Grid2D& grid() const noexcept { return grid_; }
    double zeta() const noexcept { return zeta_; }
    void set_zeta(double zeta) noexcept { zeta_ = zeta; }

    std::span<cplx> values() noexcept { return values_; }
    std::span<const cplx> values() const noexcept { return values_; }

    cplx& operator()(std::size_t i, std::size_t j) noexcept { return values_[grid_.index(i, j)]; }
    const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return values_[grid_.index(i, j)]; }

    /// sum |psi|^2 dx dy
    double norm2() const noexcept;

    /// True when the discrete norm^2 is 1 within tol.
    bool is_normalized(double tol = 1e-12) const noexcept;

    /// Rescales to unit discrete norm. Throws NumericalGuardError for a zero field.
    void normalize();

    ComplexField2D& operator+=(const ComplexField2D& other);
    ComplexField2D& operator*=(cplx s) noexcept;

private:
    Grid2D grid_;
    std::vector<cplx> values_;
    double zeta_;
};

ComplexField2D operator+(ComplexField2D a, const ComplexField2D& b);
ComplexField2D operator*(cplx s, ComplexField2D a);

/// <a|b> = sum conj(a) b dx dy. Grids must match.
cplx inner_product(const ComplexField2D& a, const ComplexField2D& b);

/// ||a - b||_2 on the grid.
double l2_distance(const ComplexField2D& a, const ComplexField2D& b);

/// ||a - e^{i phi} b|| minimised over the global phase phi.
double l2_distance_phase_aligned(const ComplexField2D& a, const ComplexField2D& b);

} // namespace sqw
