#pragma once

// Density, probability current, current lines, centroid, OAM and Gouy phase.
//
// With i dpsi/dzeta = -1/4 Lap psi + 2 A x psi the reduced current is
// j = Im(psi* grad psi) / 2, so that d|psi|^2/dzeta + div j = 0 and the
// current-line velocity is dx/dzeta = j / |psi|^2.

#include "sqw/analytic.hpp"
#include "sqw/physics.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace sqw {

std::vector<double> density(const ComplexField2D& field);

/// Transverse gradient of the sampled field. Spectral (on a 2x zero-padded
/// box) when the boundary magnitude is below 1e-10 of the maximum,
/// fourth-order central differences otherwise.
struct FieldGradient {
    std::vector<cplx> d_dx;
    std::vector<cplx> d_dy;
    bool spectral = false;
};

FieldGradient field_gradient(const ComplexField2D& field);

struct CurrentField {
    Grid2D grid;
    std::vector<double> jx;
    std::vector<double> jy;
    std::vector<double> jz_proxy; ///< |psi|^2
};

CurrentField current_density(const ComplexField2D& field);

struct StreamPoint {
    double x;
    double y;
    double zeta;
};

enum class StreamlineStatus { complete, exited_grid, rejected_null };

struct Streamline {
    StreamPoint seed;
    std::vector<StreamPoint> points; ///< includes the seed
    StreamlineStatus status = StreamlineStatus::complete;
};

/// RK4 integration of dx/dzeta = Im(grad psi / psi) / 2 on the analytic
/// field of `mode`, from zeta_begin to zeta_end with step
/// min(0.01, range / 1000). A seed whose density is below 1e-12 of the
/// density maximum on `bounds` is returned with status rejected_null; a line
/// leaving `bounds` stops with exited_grid.
std::vector<Streamline> trace_current_lines(const ModeSpec& mode, double A, double zeta_begin, double zeta_end,
                                            const std::vector<std::pair<double, double>>& seeds,
                                            const Grid2D& bounds);

/// First moments of |psi|^2 divided by the norm.
std::pair<double, double> center_of_mass(const ComplexField2D& field);

enum class OamComponent { x, y, z };
enum class OamOrigin { center_of_mass, lab };

/// Orbital angular momentum expectation in units of hbar.
///   L_z = <(x - xc)(-i d/dy) - (y - yc)(-i d/dx)>
///   L_x = -zeta (p0 w0 / 2 hbar) <k_y> - (y-part of the origin term)
///   L_y =  zeta (p0 w0 / 2 hbar) <k_x> - (p0 w0 / hbar) (<x> - x_origin)
/// in the paraxial approximation (p_z = p0, z = zeta z_R). With the default
/// centre-of-mass origin the position terms vanish. Throws
/// std::invalid_argument when |norm^2 - 1| > 1e-6.
double oam_expectation(const ComplexField2D& field, OamComponent component, const ParticleBeam& beam,
                       OamOrigin origin = OamOrigin::center_of_mass);

/// Mode-order Gouy lag (N + 1) atan(zeta), measured as minus the argument of
/// the overlap between the field and the analytic mode at (A, zeta) with its
/// Gouy factor removed. The value is determined modulo 2 pi and reported on
/// the branch nearest (N + 1) atan(zeta). Throws NumericalGuardError when
/// |overlap| < 0.99 (the field is not that mode).
double gouy_phase(const ComplexField2D& field, const ModeSpec& reference_mode, double A);

} // namespace sqw
