#pragma once

// Adaptive Gauss-Kronrod (G7/K15) integration on finite intervals.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace sqw {

struct QuadratureResult {
    double error_estimate = 0.0;
    int evaluations = 0;
    bool converged = false;
};

namespace detail {

struct Gk15Nodes {
    // Kronrod abscissae on [0, 1) in decreasing order; index 1, 3, 5 are Gauss nodes, 7 is 0.
    static constexpr std::array<double, 8> x{
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    static constexpr std::array<double, 8> wk{
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static constexpr std::array<double, 4> wg{
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(std::complex<double> v) { return std::abs(v); }

template <class T, class F>
T gk15(F& f, double a, double b, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const T fc = f(c);
    T k = fc * Gk15Nodes::wk[7];
    T g = fc * Gk15Nodes::wg[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = h * Gk15Nodes::x[i];
        const T s = f(c - dx) + f(c + dx);
        k += s * Gk15Nodes::wk[i];
        if (i % 2 == 1) g += s * Gk15Nodes::wg[i / 2];
    }
    err = magnitude((k - g) * h);
    return k * h;
}

} // namespace detail

/// Integrates f over [a, b] to |error| <= max(abs_tol, rel_tol |I|).
/// Bisects the worst segment until the summed Kronrod-Gauss estimate meets
/// the tolerance or max_segments is reached (then converged == false).
/// T is double or std::complex<double>.
template <class T, class F>
T integrate(F&& f, double a, double b, double abs_tol = 1e-13, double rel_tol = 1e-12,
            QuadratureResult* info = nullptr, int max_segments = 2000) {
    if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("integrate: bounds must be finite");
    if (a == b) {
        if (info) *info = {0.0, 0, true};
        return T{};
    }
    struct Piece {
        double a, b, err;
        T value;
    };
    std::vector<Piece> pieces;
    double err = 0.0;
    T v = detail::gk15<T>(f, a, b, err);
    pieces.push_back({a, b, err, v});
    int evals = 15;
    for (;;) {
        T total{};
        double total_err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            total += pieces[i].value;
            total_err += pieces[i].err;
            if (pieces[i].err > pieces[worst].err) worst = i;
        }
        const double tol = std::max(abs_tol, rel_tol * detail::magnitude(total));
        if (total_err <= tol || static_cast<int>(pieces.size()) >= max_segments) {
            if (info) *info = {total_err, evals, total_err <= tol};
            return total;
        }
        const Piece p = pieces[worst];
        const double mid = 0.5 * (p.a + p.b);
        double e1 = 0.0, e2 = 0.0;
        const T v1 = detail::gk15<T>(f, p.a, mid, e1);
        const T v2 = detail::gk15<T>(f, mid, p.b, e2);
        evals += 30;
        pieces[worst] = {p.a, mid, e1, v1};
        pieces.push_back({mid, p.b, e2, v2});
    }
}

} // namespace sqw
