#pragma once

#include <complex>

namespace sqw {

/// Airy function of the first kind.
double airy_ai(double x);

/// Ai'(x).
double airy_ai_prime(double x);

struct AiryValue {
    double ai;
    double aip;
};

/// Ai and Ai' together (they share all the work).
AiryValue airy_ai_pair(double x);

/// k-th derivative of Ai, obtained from Ai^{(k)} = P_k(x) Ai + Q_k(x) Ai'
/// by reducing Ai'' = x Ai. k >= 0.
double airy_ai_derivative(int k, double x);

/// Physicists' Hermite polynomial H_m(x) by three-term recurrence. m >= 0.
double hermite(int m, double x);
std::complex<double> hermite(int m, std::complex<double> z);

/// Associated Laguerre polynomial L_p^a(x). p, a >= 0.
double laguerre(int p, int a, double x);

/// Binomial coefficient as a double (exact for the small arguments used here).
double binomial(int n, int k);

/// Parameters of the scaled Airy transform
///   phi_a(y) = (1/|a|) Int Ai((y - x)/a) f(x) dx.
struct AiryTransformParams {
    double alpha_t; ///< transform scale, non-zero
    int m = 0;      ///< Hermite order of f(x) = exp(-x^2) H_m(sqrt2 x)
};

/// Closed-form Airy transform of exp(-x^2):
///   (sqrt(pi)/|a|) exp((y + 1/(24 a^3)) / (4 a^3)) Ai(y/a + 1/(16 a^4)).
double airy_transform_gaussian(double alpha_t, double y);

/// Closed-form Airy transform of exp(-x^2) H_m(sqrt2 x), built from the
/// Hermite generating function: the Gaussian prefactor times
///   sum_n C(m,n) H_n(i sqrt2 / (8 a^3)) i^n d^{m-n}/dt^{m-n} Ai((y - sqrt2 t)/a + 1/(16 a^4)) |_{t=0}.
/// The sum is evaluated in complex arithmetic; a residual imaginary part
/// above 1e-10 (relative) throws std::runtime_error.
double airy_transform_hg(int m, double alpha_t, double y);
double airy_transform_hg(const AiryTransformParams& params, double y);

} // namespace sqw
