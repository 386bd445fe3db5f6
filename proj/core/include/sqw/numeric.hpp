#pragma once

// Numerical propagators used as independent checks of the closed forms.

#include "sqw/physics.hpp"

#include <memory>

namespace sqw {

struct SplitStepPlan {
    Grid2D grid;
    double A = 0.0;
    int steps_per_rayleigh = 64;
    double absorber_width = 0.0; ///< fraction of the padded half-width, [0, 0.5)
    int pad_factor = 2;          ///< internal domain is >= pad_factor times the output grid
    unsigned threads = 1;

    /// Throws std::invalid_argument on steps_per_rayleigh < 16, absorber
    /// width outside [0, 0.5) or pad_factor < 1.
    void validate() const;
};

/// Fraction of the spectral power of `field` above `fraction` of the
/// Nyquist wavenumber on either axis.
double spectral_tail_fraction(const ComplexField2D& field, double fraction = 0.8);

/// Strang split-step integrator of i dpsi/dzeta = -1/4 Lap psi + 2 A x psi.
///
/// The state lives on a zero-padded power-of-two domain with the output
/// grid's spacing, so the periodic FFT box never wraps the beam back onto
/// the output window. Each step is half kinetic (exact in k space), full
/// potential (exact in x), half kinetic; consecutive half steps are fused.
class SplitStepPropagator {
public:
    /// Throws NumericalGuardError when the input has more than 1e-10 of its
    /// power above 80% of Nyquist.
    SplitStepPropagator(SplitStepPlan plan, const ComplexField2D& initial);
    ~SplitStepPropagator();
    SplitStepPropagator(SplitStepPropagator&&) noexcept;
    SplitStepPropagator& operator=(SplitStepPropagator&&) noexcept;

    /// Advances by delta_zeta (either sign) using ceil(|delta| * steps_per_rayleigh) steps.
    void advance(double delta_zeta);

    double zeta() const noexcept;

    /// Current state cropped to the plan grid.
    ComplexField2D field() const;

    /// Norm of the whole padded state (1 for a normalized, unabsorbed run).
    double padded_norm2() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

ComplexField2D split_step_propagate(const ComplexField2D& field, const SplitStepPlan& plan, double delta_zeta);

inline constexpr std::size_t kernel_grid_cap = 256;
inline constexpr double kernel_propagate_zeta_min = 1e-3;

/// Direct separable quadrature of the propagation integral with kernel_x
/// and kernel_y (midpoint rule on the field's grid), advancing by `zeta`.
/// Rejects grids above kernel_grid_cap per axis and |zeta| < 1e-3.
/// The midpoint sum of the chirped kernel adds images of the propagated
/// field displaced by P = pi |zeta| / dx. With R the radius holding the
/// input density above 1e-12 of its peak, the output is taken to reach
/// R sqrt(1 + zeta^2) + |A| zeta^2 / 2; an image entering the grid
/// (P < half-width + that reach, on either axis) throws NumericalGuardError.
ComplexField2D kernel_propagate(const ComplexField2D& field0, double A, double zeta, unsigned threads = 1);

} // namespace sqw
