#pragma once

// Closed-form Hermite-Gauss and Laguerre-Gauss fields in a linear potential.
//
// In reduced units the x factor of a propagated HG mode is
//
//   u_m(x, zeta) = N_m (1 + i zeta)^{-1/2} e^{-i m atan zeta} H_m(sqrt2 s / w) e^{-s^2/(1 + i zeta)}
//                  * e^{-2i A zeta x} e^{-i A^2 zeta^3 / 3},
//
// with s = x + A zeta^2 / 2, w = sqrt(1 + zeta^2) and N_m the continuum L2
// normalization. The y factor is the same with A = 0.

#include "sqw/physics.hpp"

#include <vector>

namespace sqw {

enum class ModeFamily { HG, LG };

struct ModeSpec {
    ModeFamily family = ModeFamily::HG;
    int first = 0;  ///< m (HG) or ell (LG)
    int second = 0; ///< n (HG) or p (LG)
    double offset_x = 0.0;
    double offset_y = 0.0;

    static ModeSpec hg(int m, int n, double ox = 0.0, double oy = 0.0) { return {ModeFamily::HG, m, n, ox, oy}; }
    static ModeSpec lg(int ell, int p, double ox = 0.0, double oy = 0.0) { return {ModeFamily::LG, ell, p, ox, oy}; }

    /// Throws std::invalid_argument for negative HG indices or negative p.
    void validate() const;

    /// Total order N: m + n for HG, 2p + |ell| for LG.
    int order() const noexcept;

    friend bool operator==(const ModeSpec&, const ModeSpec&) = default;
};

/// The potential-induced terms and the Gouy factor of a propagated mode.
struct PropagatedTerms {
    double centroid_shift = 0.0;   ///< A zeta^2 / 2 (the centroid moves to -shift)
    double tilt_phase_coeff = 0.0; ///< 2 A zeta, phase -coeff * x
    double t3_phase = 0.0;         ///< A^2 zeta^3 / 3, phase -t3
    cplx gouy_factor{1.0, 0.0};    ///< e^{-i N atan zeta}
};

PropagatedTerms propagated_terms(const ModeSpec& mode, double A, double zeta);

/// N_m = (sqrt(pi/2) 2^m m!)^{-1/2}, so that int |N_m e^{-x^2} H_m(sqrt2 x)|^2 dx = 1.
double hg_norm_1d(int m);

/// One-dimensional propagated HG factor u_m(x, zeta) and its x derivative.
cplx hg_factor(int m, double x, double A, double zeta);
cplx hg_factor_derivative(int m, double x, double A, double zeta);

struct HgTerm {
    int m;
    int n;
    cplx coeff;
};

/// LG(ell, p) as a sum of HG(m, n) with m + n = 2p + |ell|. The convention
/// matches lg_initial: LG(+-1, 0) = (HG10 +- i HG01) / sqrt2.
std::vector<HgTerm> lg_from_hg_coeffs(int ell, int p);

/// Pointwise value and transverse gradient of a propagated mode.
struct FieldSample {
    cplx value;
    cplx d_dx;
    cplx d_dy;
};

FieldSample mode_sample(const ModeSpec& mode, double A, double zeta, double x, double y);
cplx mode_value(const ModeSpec& mode, double A, double zeta, double x, double y);

/// Fields sampled on a grid. *_initial check that the grid captures at
/// least 0.999 of the norm and throw NumericalGuardError otherwise.
ComplexField2D hg_initial(const ModeSpec& mode, const Grid2D& grid);
ComplexField2D hg_propagated(const ModeSpec& mode, double A, double zeta, const Grid2D& grid);
/// Direct polar form C (sqrt2 r)^{|l|} L_p^{|l|}(2 r^2) e^{-r^2} e^{i l phi}.
ComplexField2D lg_initial(const ModeSpec& mode, const Grid2D& grid);
/// Superposition of hg_propagated over lg_from_hg_coeffs.
ComplexField2D lg_propagated(const ModeSpec& mode, double A, double zeta, const Grid2D& grid);

/// Dispatches on mode.family.
ComplexField2D initial_field(const ModeSpec& mode, const Grid2D& grid);
ComplexField2D propagated_field(const ModeSpec& mode, double A, double zeta, const Grid2D& grid);

inline constexpr double kernel_zeta_min = 1e-6;

/// Propagation kernels with respect to the reduced measure dx'.
///   K_x = (i pi zeta)^{-1/2} exp(-i [A^2 zeta^3/12 - (x - x')^2/zeta + A zeta (x + x')])
///   K_y = (i pi zeta)^{-1/2} exp(i (y - y')^2 / zeta)
/// |zeta| < kernel_zeta_min throws std::invalid_argument.
cplx kernel_x(double x, double x_prime, double A, double zeta);
cplx kernel_y(double y, double y_prime, double zeta);

/// x0 - A zeta^2 / 2.
double classical_centroid(double A, double zeta, double x0 = 0.0);

/// A^2 zeta^3 / 3.
double t3_phase(double A, double zeta);

} // namespace sqw
