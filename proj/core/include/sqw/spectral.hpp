#pragma once

// Expansion of HG modes over the eigenstates of H = -1/4 Lap + 2 A x.
//
// Along x the eigenstates are Airy functions,
//   chi_eps(x) = |c| / sqrt(2|A|) Ai(c (x - eps / (2A))),  c = (8A)^{1/3},
// normalized to delta(eps - eps'); along y (and along x when A = 0) they
// are plane waves e^{iky} / sqrt(2 pi). Coefficients evolve as
// c(eps) e^{-i eps zeta} and d(k) e^{-i k^2 zeta / 4}.

#include "sqw/analytic.hpp"
#include "sqw/physics.hpp"

#include <string>
#include <vector>

namespace sqw {

struct SpectralGrid {
    std::vector<double> epsilon; ///< x samples: energies, or wavenumbers when x_plane_waves
    std::vector<double> k_y;
    double d_epsilon = 0.0;
    double d_k = 0.0;
    bool x_plane_waves = false; ///< A == 0
};

struct SpectralCoefficients {
    SpectralGrid grid;
    std::vector<cplx> c; ///< per epsilon sample
    std::vector<cplx> d; ///< per k_y sample
    double A = 0.0;
    double zeta = 0.0;
    // Validity of the discrete sums: the reconstruction window and the
    // largest |zeta| for which the sampling keeps aliased images out of it.
    double window_x = 0.0;
    double window_y = 0.0;
    double zeta_limit = 0.0;
    double tail_ratio = 0.0;     ///< largest edge |coefficient| relative to the peak
    double tail_tolerance = 1e-8;
};

/// Delta-normalized Airy eigenstate. A == 0 throws std::invalid_argument.
double eigenstate_x(double epsilon, double A, double x);

enum class CoeffRoute { quadrature, closed_form };

/// <eps|m> for the centred x factor N_m e^{-x^2} H_m(sqrt2 x). The
/// quadrature route integrates adaptively over |x| <= 7 + m/2 and throws
/// NumericalGuardError if it does not converge; the closed form uses
/// airy_transform_hg. A == 0 or m < 0 throws std::invalid_argument.
double expansion_coeff_x(int m, double epsilon, double A, CoeffRoute route = CoeffRoute::quadrature);

/// <k|n> = (1/sqrt(2 pi)) int e^{-iky} N_n e^{-y^2} H_n(sqrt2 y) dy
///       = N_n (-i)^n H_n(k / sqrt2) e^{-k^2/4} / sqrt2.
cplx expansion_coeff_y(int n, double k);

struct AnalyzeOptions {
    CoeffRoute route = CoeffRoute::closed_form;
    double tail_tolerance = 1e-8;
};

/// Samples the coefficients of an HG mode (offsets allowed) on uniform
/// grids wide enough that the edge coefficients are below tail_tolerance of
/// the peak, and fine enough that reconstructions on `window` stay free of
/// aliased images for |zeta| <= zeta_max.
SpectralCoefficients analyze(const ModeSpec& mode, double A, const Grid2D& window, double zeta_max,
                             const AnalyzeOptions& options = {});

/// Multiplies by the eigenphases for a further delta_zeta.
SpectralCoefficients evolve_in_eigenbasis(const SpectralCoefficients& coeffs, double delta_zeta);

/// psi(x, y) = sum c chi_eps(x) d_eps * sum d e^{iky} / sqrt(2 pi) d_k.
/// Throws NumericalGuardError when the grid is wider than the analysis
/// window, |zeta| exceeds the sampling limit, or the tails were not captured.
ComplexField2D reconstruct(const SpectralCoefficients& coeffs, const Grid2D& grid);

/// CSV tables "epsilon,re,im" (or "k,re,im") with one row per sample.
std::string coefficients_csv_x(const SpectralCoefficients& coeffs);
std::string coefficients_csv_y(const SpectralCoefficients& coeffs);

} // namespace sqw
