#pragma once

// Thin phase elements, the two-grating interferometer, the COW reference
// formula, the opposite-vortex interferometer and 1D fringe analysis.

#include "sqw/analytic.hpp"
#include "sqw/physics.hpp"

#include <optional>
#include <vector>

namespace sqw {

/// Thin grating equivalent: multiplies the field by exp(i sign k_T x).
struct PhaseElement {
    double zeta_position = 0.0;
    double k_T = 0.0; ///< reduced kick p_T w0 / hbar
    int sign = 1;
};

/// Throws std::invalid_argument when the element is not on the field's
/// zeta plane, and NumericalGuardError when |k_T| >= 80% of the x Nyquist.
ComplexField2D apply_phase_element(const ComplexField2D& field, const PhaseElement& element);

struct Interferogram {
    std::vector<double> x;
    std::vector<double> intensity;
    double fringe_spacing = 0.0;
    double phase_shift = 0.0; ///< delta in I ~ 1 + V cos(2 pi x / spacing + delta)
    double visibility = 0.0;
    bool has_dominant_peak = false;
};

/// Spacing from the strongest non-DC peak of the Hann-windowed, 4x
/// zero-padded spectrum (log-parabolic interpolation); phase from the
/// windowed Fourier sum at that wavenumber, referenced to x = 0; visibility
/// (Imax - Imin)/(Imax + Imin) over the central half of the cut. The peak is
/// dominant when its power is at least 3x that of any other local maximum
/// outside its lobe and the cut spans at least 3 fringes; otherwise only the
/// visibility is reported. Needs >= 32 uniformly spaced samples.
Interferogram fringe_metrics(const std::vector<double>& x, const std::vector<double>& intensity);

struct GratingOptions {
    ModeSpec mode = ModeSpec::hg(0, 0);
    std::optional<Grid2D> grid; ///< default: 256^2, extent chosen from the geometry
    int steps_per_rayleigh = 32;
    unsigned threads = 1;
};

struct GratingResult {
    double delta_phi = 0.0; ///< measured phase of arm 1 relative to arm 2
    double expected = 0.0;  ///< A k_T zeta_total^2 / 2
    Interferogram fringes;  ///< cut of the recombined density along x at y = 0
    ComplexField2D output;  ///< (arm1 + arm2) / sqrt2 at zeta_total
};

/// Arm 1 is kicked by +k_T at zeta = 0 and by -2 k_T at zeta_total / 2;
/// arm 2 by -k_T and +2 k_T. Both arms are split-step propagated and
/// meet again at zeta_total. delta_phi = arg sum psi2* psi1 e^{2 i k_T (x - xc)}
/// with xc the mean centroid of the two arm densities. Throws NumericalGuardError
/// when an arm loses more than 0.1% of its norm off the grid.
GratingResult grating_interferometer(double A, double k_T, double zeta_total, const GratingOptions& options = {});

/// 4 pi lambda g m^2 d (d + a cos theta) tan theta sin phi / h^2.
double cow_phase(double lambda_dB, double g, double mass, double d, double a, double theta, double phi);

struct VortexOptions {
    std::optional<Grid2D> grid; ///< default: 256^2 covering both beams
    std::size_t cut_samples = 1024;
};

struct VortexResult {
    ComplexField2D field;  ///< normalized superposition on the grid
    Interferogram fringes; ///< cut along x over [-d, d] at y = y_cut
    double y_cut = 0.0;
};

/// LG(+ell, p) displaced to x = -d plus LG(-ell, p) displaced to x = +d,
/// propagated to zeta in the potential A. The cut is sampled analytically,
/// centred on the lab x = 0, at the y maximizing |psi1|^2 |psi2|^2 on x = 0.
/// Throws NumericalGuardError when the crossing intensity is below 1e-6 of
/// the peak density.
VortexResult vortex_interfere(int ell, int p, double d, double A, double zeta, const VortexOptions& options = {});

struct VortexSensitivity {
    double spacing = 0.0;      ///< fringe spacing at the first A value
    double phase_rate = 0.0;   ///< least-squares d(phase)/dA
    std::vector<double> phases; ///< unwrapped phase per A value
};

/// Runs vortex_interfere over A_values (at least two, increasing) and fits
/// the unwrapped fringe phase linearly in A. Throws NumericalGuardError
/// when a cut has no dominant fringe peak.
VortexSensitivity vortex_sensitivity(int ell, int p, double d, double zeta, const std::vector<double>& A_values,
                                     const VortexOptions& options = {});

} // namespace sqw
