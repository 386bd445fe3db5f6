#include "sqw/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace sqw {

namespace {

constexpr double kAi0 = 0.355028053887817239260;  // Ai(0)
constexpr double kAip0 = -0.258819403792806798405; // Ai'(0)

constexpr double kSeriesLimit = 2.5;
constexpr double kAsymptoticLimit = 9.0;
constexpr double kTaylorStep = 0.5;

// Ai and Ai' with an optional exponential scale: the true values are
// ai * exp(-scale), aip * exp(-scale). scale is non-zero only on the
// decaying side, where it keeps large arguments from underflowing.
struct ScaledAiry {
    double ai;
    double aip;
    double scale;
};

AiryValue maclaurin(double x) {
    // Ai = Ai(0) f + Ai'(0) g with f = sum a_k x^{3k}, g = sum b_k x^{3k+1}.
    const double x3 = x * x * x;
    double f = 1.0, fp = 0.0, g = x, gp = 1.0;
    double tf = 1.0, tfp = 0.5 * x * x, tg = x, tgp = 1.0;
    fp = tfp;
    for (int k = 0; k < 60; ++k) {
        const double kk = static_cast<double>(k);
        tf *= x3 / ((3 * kk + 2) * (3 * kk + 3));
        tg *= x3 / ((3 * kk + 3) * (3 * kk + 4));
        tgp *= x3 / ((3 * kk + 1) * (3 * kk + 3));
        f += tf;
        g += tg;
        gp += tgp;
        if (k >= 1) {
            tfp *= x3 / (3 * kk * (3 * kk + 2));
            fp += tfp;
        }
        const double small = 1e-18 * (std::abs(f) + std::abs(g) + std::abs(fp) + std::abs(gp));
        if (k > 2 && std::abs(tf) + std::abs(tg) + std::abs(tfp) + std::abs(tgp) < small) break;
    }
    return {kAi0 * f + kAip0 * g, kAi0 * fp + kAip0 * gp};
}

// u_k and v_k of the Airy asymptotic expansions.
struct AsymptoticCoefficients {
    static constexpr int kCount = 40;
    std::array<double, kCount> u{};
    std::array<double, kCount> v{};
    AsymptoticCoefficients() {
        u[0] = 1.0;
        v[0] = 1.0;
        for (int k = 1; k < kCount; ++k) {
            const double kk = static_cast<double>(k);
            u[k] = u[k - 1] * (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) / ((2 * kk - 1) * 216.0 * kk);
            v[k] = -(6 * kk + 1) / (6 * kk - 1) * u[k];
        }
    }
};

const AsymptoticCoefficients& asymptotic_coefficients() {
    static const AsymptoticCoefficients c;
    return c;
}

// x >= kAsymptoticLimit: returns Ai, Ai' scaled by exp(+xi).
ScaledAiry asymptotic_positive(double x) {
    const auto& c = asymptotic_coefficients();
    const double xi = 2.0 / 3.0 * x * std::sqrt(x);
    double su = 0.0, sv = 0.0, pw = 1.0, last = INFINITY;
    for (int k = 0; k < AsymptoticCoefficients::kCount; ++k) {
        const double term = c.u[k] * pw;
        if (std::abs(term) > last) break;
        last = std::abs(term);
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        su += sign * term;
        sv += sign * c.v[k] * pw;
        if (std::abs(term) < 1e-17 * std::abs(su)) break;
        pw /= xi;
    }
    const double x14 = std::sqrt(std::sqrt(x));
    const double norm = 1.0 / (2.0 * std::sqrt(std::numbers::pi));
    return {norm * su / x14, -norm * x14 * sv, xi};
}

// x <= -kAsymptoticLimit: oscillatory expansions.
AiryValue asymptotic_negative(double x) {
    const auto& c = asymptotic_coefficients();
    const double z = -x;
    const double xi = 2.0 / 3.0 * z * std::sqrt(z);
    // Even/odd partial sums of u and v.
    double ue = 0.0, uo = 0.0, ve = 0.0, vo = 0.0;
    double pw = 1.0, last = INFINITY;
    for (int k = 0; k < AsymptoticCoefficients::kCount; ++k) {
        const double term = c.u[k] * pw;
        if (std::abs(term) > last) break;
        last = std::abs(term);
        // (-1)^{floor(k/2)} sign pattern of the paired series.
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            ue += sign * term;
            ve += sign * c.v[k] * pw;
        } else {
            uo += sign * term;
            vo += sign * c.v[k] * pw;
        }
        if (std::abs(term) < 1e-17) break;
        pw /= xi;
    }
    const double theta = xi + 0.25 * std::numbers::pi;
    const double s = std::sin(theta), co = std::cos(theta);
    const double z14 = std::sqrt(std::sqrt(z));
    const double rpi = 1.0 / std::sqrt(std::numbers::pi);
    const double ai = rpi / z14 * (s * ue - co * uo);
    const double aip = -rpi * z14 * (co * ve + s * vo);
    return {ai, aip};
}

// One Taylor step of y'' = x y from x0 to x0 + h.
void taylor_step(double x0, double h, double& y, double& yp) {
    // a_{n+2} (n+2)(n+1) = x0 a_n + a_{n-1}
    double am1 = 0.0;    // a_{n-1}
    double a0 = y;       // a_n
    double a1 = yp;      // a_{n+1}
    double sum = a0 + a1 * h;
    double dsum = a1;
    double hp = h;       // h^{n+1}
    int quiet = 0;
    for (int n = 0; n < 200; ++n) {
        const double a2 = (x0 * a0 + am1) / ((n + 2.0) * (n + 1.0));
        const double term = a2 * hp * h;       // a_{n+2} h^{n+2}
        const double dterm = (n + 2.0) * a2 * hp; // (n+2) a_{n+2} h^{n+1}
        sum += term;
        dsum += dterm;
        hp *= h;
        am1 = a0;
        a0 = a1;
        a1 = a2;
        const double tol = 1e-18 * (std::abs(sum) + std::abs(dsum));
        quiet = (std::abs(term) + std::abs(dterm) <= tol) ? quiet + 1 : 0;
        if (quiet >= 3) break;
    }
    y = sum;
    yp = dsum;
}

ScaledAiry airy_scaled(double x) {
    if (std::abs(x) <= kSeriesLimit) {
        const auto v = maclaurin(x);
        return {v.ai, v.aip, 0.0};
    }
    if (x >= kAsymptoticLimit) return asymptotic_positive(x);
    if (x <= -kAsymptoticLimit) {
        const auto v = asymptotic_negative(x);
        return {v.ai, v.aip, 0.0};
    }
    if (x > 0.0) {
        // Integrate the recessive solution backwards from the asymptotic anchor;
        // this direction is stable. The anchor's exp(-xi) scale is carried along.
        const auto anchor = asymptotic_positive(kAsymptoticLimit);
        double y = anchor.ai, yp = anchor.aip, pos = kAsymptoticLimit;
        while (pos - x > 1e-15) {
            const double h = -std::min(kTaylorStep, pos - x);
            taylor_step(pos, h, y, yp);
            pos += h;
        }
        return {y, yp, anchor.scale};
    }
    const auto start = maclaurin(-kSeriesLimit);
    double y = start.ai, yp = start.aip, pos = -kSeriesLimit;
    while (pos - x > 1e-15) {
        const double h = -std::min(kTaylorStep, pos - x);
        taylor_step(pos, h, y, yp);
        pos += h;
    }
    return {y, yp, 0.0};
}

std::vector<std::vector<double>> airy_derivative_polynomials_impl(int kmax, bool want_q) {
    // Coefficient vectors (ascending powers) of P_k and Q_k.
    std::vector<double> p{1.0}, q{};
    for (int k = 0; k < kmax; ++k) {
        std::vector<double> np(std::max(p.size(), q.size() + 1), 0.0);
        std::vector<double> nq(std::max(p.size(), q.size()), 0.0);
        for (std::size_t i = 1; i < p.size(); ++i) np[i - 1] += static_cast<double>(i) * p[i]; // P'
        for (std::size_t i = 0; i < q.size(); ++i) np[i + 1] += q[i];                         // x Q
        for (std::size_t i = 0; i < p.size(); ++i) nq[i] += p[i];                             // P
        for (std::size_t i = 1; i < q.size(); ++i) nq[i - 1] += static_cast<double>(i) * q[i]; // Q'
        p = std::move(np);
        q = std::move(nq);
    }
    return {p, want_q ? q : std::vector<double>{}};
}

double horner(const std::vector<double>& c, double x) {
    double s = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
    return s;
}

// Ai^{(k)}(x) * exp(scale) with the scale of airy_scaled(x).
double airy_derivative_scaled(int k, const ScaledAiry& v, double x) {
    const auto pq = airy_derivative_polynomials_impl(k, true);
    return horner(pq[0], x) * v.ai + horner(pq[1], x) * v.aip;
}

} // namespace

AiryValue airy_ai_pair(double x) {
    const auto v = airy_scaled(x);
    if (v.scale == 0.0) return {v.ai, v.aip};
    const double e = std::exp(-v.scale);
    return {v.ai * e, v.aip * e};
}

double airy_ai(double x) { return airy_ai_pair(x).ai; }

double airy_ai_prime(double x) { return airy_ai_pair(x).aip; }

double airy_ai_derivative(int k, double x) {
    if (k < 0) throw std::invalid_argument("airy_ai_derivative: k must be >= 0");
    const auto v = airy_scaled(x);
    return airy_derivative_scaled(k, v, x) * std::exp(-v.scale);
}

double hermite(int m, double x) {
    if (m < 0) throw std::invalid_argument("hermite: order must be >= 0");
    if (m == 0) return 1.0;
    double hm1 = 1.0, h = 2.0 * x;
    for (int k = 1; k < m; ++k) {
        const double hn = 2.0 * x * h - 2.0 * k * hm1;
        hm1 = h;
        h = hn;
    }
    return h;
}

std::complex<double> hermite(int m, std::complex<double> z) {
    if (m < 0) throw std::invalid_argument("hermite: order must be >= 0");
    if (m == 0) return 1.0;
    std::complex<double> hm1 = 1.0, h = 2.0 * z;
    for (int k = 1; k < m; ++k) {
        const auto hn = 2.0 * z * h - 2.0 * static_cast<double>(k) * hm1;
        hm1 = h;
        h = hn;
    }
    return h;
}

double laguerre(int p, int a, double x) {
    if (p < 0 || a < 0) throw std::invalid_argument("laguerre: indices must be >= 0");
    if (p == 0) return 1.0;
    double lm1 = 1.0, l = 1.0 + a - x;
    for (int k = 1; k < p; ++k) {
        const double ln = ((2.0 * k + 1.0 + a - x) * l - (k + a) * lm1) / (k + 1.0);
        lm1 = l;
        l = ln;
    }
    return l;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

double airy_transform_gaussian(double alpha_t, double y) { return airy_transform_hg(0, alpha_t, y); }

double airy_transform_hg(const AiryTransformParams& params, double y) {
    return airy_transform_hg(params.m, params.alpha_t, y);
}

double airy_transform_hg(int m, double alpha_t, double y) {
    if (m < 0) throw std::invalid_argument("airy_transform_hg: m must be >= 0");
    if (alpha_t == 0.0 || !std::isfinite(alpha_t)) throw std::invalid_argument("airy_transform_hg: alpha_t must be non-zero");
    using cd = std::complex<double>;
    const double a = alpha_t;
    const double a3 = a * a * a;
    const double beta = y / a + 1.0 / (16.0 * a3 * a);
    const double log_pref = (y + 1.0 / (24.0 * a3)) / (4.0 * a3);

    const auto v = airy_scaled(beta);
    const cd herm_arg{0.0, std::sqrt(2.0) / (8.0 * a3)};
    const double chain = -std::sqrt(2.0) / a; // d/dt of the Ai argument

    const auto pq = airy_derivative_polynomials_impl(m, true);
    cd sum{0.0, 0.0};
    double magnitude = 0.0;
    cd ipow{1.0, 0.0};
    for (int n = 0; n <= m; ++n) {
        const int k = m - n;
        const double dk = airy_derivative_scaled(k, v, beta) * std::pow(chain, k);
        const cd term = binomial(m, n) * hermite(n, herm_arg) * ipow * dk;
        sum += term;
        magnitude += std::abs(term);
        ipow *= cd{0.0, 1.0};
    }
    if (std::abs(sum.imag()) > 1e-10 * std::max(magnitude, 1e-300)) {
        throw std::runtime_error("airy_transform_hg: closed-form sum has a non-negligible imaginary part");
    }
    return std::sqrt(std::numbers::pi) / std::abs(a) * std::exp(log_pref - v.scale) * sum.real();
}

} // namespace sqw
