// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   sqw_acceptance [--only N]

#include "sqw/analytic.hpp"
#include "sqw/interfere.hpp"
#include "sqw/manifest.hpp"
#include "sqw/numeric.hpp"
#include "sqw/observables.hpp"
#include "sqw/scenario.hpp"
#include "sqw/spectral.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

using namespace sqw;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// Shared setup of criteria 1, 4 and 5.
const std::vector<ModeSpec> kModes{ModeSpec::hg(0, 0), ModeSpec::hg(2, 1), ModeSpec::lg(1, 0), ModeSpec::lg(2, 2)};
const std::vector<double> kAs{0.0, 0.4};
const std::vector<double> kZetas{0.5, 1.0, 2.0};
const Grid2D kGrid512(512, 512, 8.0, 8.0);
constexpr int kStepsPerRayleigh = 32;

// Physical beam for the SI forms: thermal neutron, 2 um waist.
const ParticleBeam kBeam = ParticleBeam::from_wavelength(1.67492749804e-27, 1.8e-10, 2e-6);

std::string mode_name(const ModeSpec& m) {
    return fmt("%s(%d,%d)", m.family == ModeFamily::HG ? "HG" : "LG", m.first, m.second);
}

struct NumericCase {
    ModeSpec mode;
    double A;
    double zeta;
    ComplexField2D field;
    double seconds;
};

std::vector<NumericCase>& numeric_cases() {
    static std::vector<NumericCase> cases = [] {
        std::vector<NumericCase> out;
        for (const auto& mode : kModes)
            for (double A : kAs)
                for (double zeta : kZetas) {
                    const auto t0 = Clock::now();
                    SplitStepPlan plan{kGrid512, A, kStepsPerRayleigh, 0.0, 2, 1};
                    auto f = split_step_propagate(initial_field(mode, kGrid512), plan, zeta);
                    out.push_back({mode, A, zeta, std::move(f), seconds_since(t0)});
                }
        return out;
    }();
    return cases;
}

// 1. Analytic vs split-step on 512^2, extent 8; L2 <= 1e-6 aligned, <= 15 s per case.
Outcome criterion1() {
    double worst = 0.0, slowest = 0.0;
    std::string worst_case;
    for (const auto& c : numeric_cases()) {
        const double d = l2_distance_phase_aligned(c.field, propagated_field(c.mode, c.A, c.zeta, kGrid512));
        if (d >= worst) {
            worst = d;
            worst_case = fmt("%s A=%.1f zeta=%.1f", mode_name(c.mode).c_str(), c.A, c.zeta);
        }
        slowest = std::max(slowest, c.seconds);
    }
    return {worst <= 1e-6 && slowest <= 15.0,
            fmt("24 cases, worst L2 %.2e at %s (tol 1e-6), slowest case %.2f s (limit 15 s, 1 thread)", worst,
                worst_case.c_str(), slowest)};
}

// 2. Kernel quadrature vs analytic on 128^2; L2 <= 1e-5, <= 60 s.
Outcome criterion2() {
    const Grid2D g(128, 128, 8.0, 8.0);
    const auto mode = ModeSpec::hg(2, 1);
    const auto t0 = Clock::now();
    double worst = 0.0;
    std::string parts;
    for (auto [A, zeta] : {std::pair{0.4, 1.0}, {0.2, 2.0}}) {
        const auto k = kernel_propagate(initial_field(mode, g), A, zeta, 1);
        const double d = l2_distance(k, propagated_field(mode, A, zeta, g));
        worst = std::max(worst, d);
        parts += fmt(" (A=%.1f, zeta=%.1f): %.2e", A, zeta, d);
    }
    const double t = seconds_since(t0);
    return {worst <= 1e-5 && t <= 60.0, fmt("HG(2,1)%s (tol 1e-5), %.2f s (limit 60 s)", parts.c_str(), t)};
}

double quadratic_coefficient(const std::vector<double>& t, const std::vector<double>& y) {
    // Normal equations of y = c0 + c1 t + c2 t^2.
    double s[5] = {}, r[3] = {};
    for (std::size_t i = 0; i < t.size(); ++i) {
        double p = 1.0;
        for (int k = 0; k < 5; ++k) {
            if (k < 3) r[k] += p * y[i];
            s[k] += p;
            p *= t[i];
        }
    }
    double m[3][4] = {{s[0], s[1], s[2], r[0]}, {s[1], s[2], s[3], r[1]}, {s[2], s[3], s[4], r[2]}};
    for (int c = 0; c < 3; ++c)
        for (int row = c + 1; row < 3; ++row) {
            const double f = m[row][c] / m[c][c];
            for (int k = c; k < 4; ++k) m[row][k] -= f * m[c][k];
        }
    double x[3];
    for (int row = 2; row >= 0; --row) {
        double v = m[row][3];
        for (int k = row + 1; k < 3; ++k) v -= m[row][k] * x[k];
        x[row] = v / m[row][row];
    }
    return x[2];
}

// 3. Quadratic coefficient of the split-step centroid = -A/2 within 0.1%.
Outcome criterion3() {
    const Grid2D g(256, 256, 8.0, 8.0);
    const double A = 0.4;
    double worst = 0.0;
    std::string parts;
    for (const auto& mode : {ModeSpec::hg(0, 0), ModeSpec::lg(1, 0)}) {
        SplitStepPropagator p({g, A, kStepsPerRayleigh, 0.0, 2, 1}, initial_field(mode, g));
        std::vector<double> t{0.0}, xc{center_of_mass(p.field()).first};
        for (int k = 1; k <= 8; ++k) {
            p.advance(0.25);
            t.push_back(p.zeta());
            xc.push_back(center_of_mass(p.field()).first);
        }
        const double c2 = quadratic_coefficient(t, xc);
        const double rel = std::abs(c2 - (-A / 2.0)) / (A / 2.0);
        worst = std::max(worst, rel);
        parts += fmt(" %s: %.10f", mode_name(mode).c_str(), c2);
    }
    return {worst <= 1e-3, fmt("A=0.4, fitted coefficient%s vs -0.2, worst rel %.2e (tol 1e-3)", parts.c_str(), worst)};
}

// 4. |psi_A(x, y)| = |psi_0(x + A zeta^2/2, y)| pointwise within 1e-8, with psi_A from split-step.
Outcome criterion4() {
    double worst = 0.0;
    int n = 0;
    for (const auto& c : numeric_cases()) {
        if (c.A == 0.0) continue;
        ++n;
        const double shift = c.A * c.zeta * c.zeta / 2.0;
        for (std::size_t i = 0; i < kGrid512.nx(); ++i)
            for (std::size_t j = 0; j < kGrid512.ny(); ++j) {
                const double free = std::abs(mode_value(c.mode, 0.0, c.zeta, kGrid512.x(i) + shift, kGrid512.y(j)));
                worst = std::max(worst, std::abs(std::abs(c.field(i, j)) - free));
            }
    }
    return {worst <= 1e-8, fmt("%d cases (A=0.4), max |dev| %.2e (tol 1e-8)", n, worst)};
}

// 5. psi_A e^{i(2 A zeta x + A^2 zeta^3/3)} / psi_0(x + A zeta^2/2) has one global phase.
Outcome criterion5() {
    double worst = 0.0;
    int n = 0;
    for (const auto& c : numeric_cases()) {
        if (c.A == 0.0) continue;
        ++n;
        const double shift = c.A * c.zeta * c.zeta / 2.0;
        const double t3 = c.A * c.A * c.zeta * c.zeta * c.zeta / 3.0;
        double peak = 0.0;
        for (const auto& v : c.field.values()) peak = std::max(peak, std::abs(v));
        std::vector<cplx> ratio;
        cplx mean{0.0, 0.0};
        for (std::size_t i = 0; i < kGrid512.nx(); ++i)
            for (std::size_t j = 0; j < kGrid512.ny(); ++j) {
                const cplx v = c.field(i, j);
                if (std::abs(v) <= 1e-6 * peak) continue;
                const double x = kGrid512.x(i);
                const cplx corrected = v * std::polar(1.0, 2.0 * c.A * c.zeta * x + t3);
                const cplx r = corrected / mode_value(c.mode, 0.0, c.zeta, x + shift, kGrid512.y(j));
                ratio.push_back(r);
                mean += r / std::abs(r);
            }
        const double phi = std::arg(mean);
        for (const auto& r : ratio) worst = std::max(worst, std::abs(std::arg(r * std::polar(1.0, -phi))));
    }
    return {worst < 1e-8, fmt("%d cases (A=0.4), max phase scatter %.2e rad where |psi| > 1e-6 max (tol 1e-8)", n, worst)};
}

// 6. <L_z> = ell within 1e-4, <L_x> = 0 within 1e-6, <L_y> = -z^2 alpha m / p0 within 0.5%.
// 512^2 with half-width 10: at A=0.4, zeta=2 the shifted vortex clips an
// extent-8 window and the lost tail carries net k_y.
Outcome criterion6() {
    const Grid2D g(512, 512, 10.0, 10.0);
    double lz = 0.0, lx = 0.0, ly_rel = 0.0, ly_free = 0.0;
    for (int ell = -2; ell <= 2; ++ell)
        for (double A : kAs)
            for (double zeta : kZetas) {
                const auto f = propagated_field(ModeSpec::lg(ell, 0), A, zeta, g);
                lz = std::max(lz, std::abs(oam_expectation(f, OamComponent::z, kBeam) - ell));
                lx = std::max(lx, std::abs(oam_expectation(f, OamComponent::x, kBeam)));
                const double ly = oam_expectation(f, OamComponent::y, kBeam);
                const double z = z_from_zeta(kBeam, zeta);
                const double alpha = alpha_from_reduced(kBeam, A);
                const double expected = -z * z * alpha * kBeam.mass() * kBeam.p0() / (kBeam.p0() * kBeam.p0()) /
                                        constants::hbar;
                if (A == 0.0) ly_free = std::max(ly_free, std::abs(ly));
                else ly_rel = std::max(ly_rel, std::abs(ly - expected) / std::abs(expected));
            }
    const bool ok = lz <= 1e-4 && lx <= 1e-6 && ly_rel <= 5e-3 && ly_free <= 1e-6;
    return {ok, fmt("512^2 extent 10, ell -2..2 x A x zeta: max |L_z - ell| %.2e (tol 1e-4), max |L_x| %.2e (tol 1e-6), "
                    "L_y rel err %.2e (tol 5e-3), |L_y| at A=0 %.2e",
                    lz, lx, ly_rel, ly_free)};
}

// 7. Grating dPhi = p_T m alpha z^2 / (2 hbar p0^2) within 1% over 5 A; COW reduction within 1e-10.
Outcome criterion7() {
    const double k_T = 2.0, zeta = 2.0;
    const double p_T = k_T * constants::hbar / kBeam.w0();
    const double z = z_from_zeta(kBeam, zeta);
    double worst = 0.0;
    for (double A : {0.02, 0.05, 0.1, 0.2, 0.4}) {
        const double alpha = alpha_from_reduced(kBeam, A);
        const double expected = p_T * kBeam.mass() * alpha * z * z / (2.0 * constants::hbar * kBeam.p0() * kBeam.p0());
        const auto r = grating_interferometer(A, k_T, zeta);
        worst = std::max(worst, std::abs(r.delta_phi - expected) / std::abs(expected));
    }
    const double lambda = 1.8e-10, g = 9.81, m = 1.67492749804e-27, d = 0.03, theta = 0.3, phi = 0.5;
    const double p0 = constants::planck / lambda;
    const double pT = p0 * std::tan(theta), alpha = m * g * std::sin(phi), zz = 2.0 * d;
    const double reduced = pT * m * alpha * zz * zz / (2.0 * constants::hbar * p0 * p0);
    const double cow = std::abs(cow_phase(lambda, g, m, d, 0.0, theta, phi) - reduced) / reduced;
    return {worst <= 1e-2 && cow <= 1e-10,
            fmt("grating worst rel err %.2e over 5 A (tol 1e-2); COW vs reduced rel %.2e (tol 1e-10)", worst, cow)};
}

// 8. Spectral route within 1e-5 L2 (HG m <= 3); quadrature vs closed-form coefficients within 1e-6.
Outcome criterion8() {
    const Grid2D g(64, 64, 6.0, 6.0);
    double worst = 0.0;
    for (int m = 0; m <= 3; ++m)
        for (double A : kAs) {
            const auto mode = ModeSpec::hg(m, 1);
            const auto c = analyze(mode, A, g, 2.0);
            for (double zeta : kZetas)
                worst = std::max(worst, l2_distance(reconstruct(evolve_in_eigenbasis(c, zeta), g),
                                                    propagated_field(mode, A, zeta, g)));
        }
    double coeff = 0.0;
    for (int m = 0; m <= 3; ++m)
        for (double A : {0.4, -0.7})
            for (double eps = -4.0; eps <= 4.0; eps += 0.5)
                coeff = std::max(coeff, std::abs(expansion_coeff_x(m, eps, A, CoeffRoute::quadrature) -
                                                 expansion_coeff_x(m, eps, A, CoeffRoute::closed_form)));
    return {worst <= 1e-5 && coeff <= 1e-6,
            fmt("HG(m,1) m<=3, A in {0,0.4}: worst L2 %.2e (tol 1e-5); coefficient routes max diff %.2e (tol 1e-6)",
                worst, coeff)};
}

// 9. dPhi/dA strictly increasing over ell = 1..6; spacing ~ |ell|^p with |p| = 0.5 +- 0.15.
Outcome criterion9() {
    const double f = 5.0, zeta = std::sqrt(f * f - 1.0);
    std::vector<double> rates, lx, ly;
    for (int ell = 1; ell <= 6; ++ell) {
        const auto s = vortex_sensitivity(ell, 0, f * std::sqrt(ell / 2.0), zeta, {0.0, 0.01, 0.02});
        rates.push_back(s.phase_rate);
        lx.push_back(std::log(ell));
        ly.push_back(std::log(s.spacing));
    }
    bool increasing = true;
    for (std::size_t i = 1; i < rates.size(); ++i) increasing = increasing && rates[i] > rates[i - 1];
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(lx.size());
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    std::string r;
    for (double v : rates) r += fmt(" %.3f", v);
    return {increasing && std::abs(std::abs(slope) - 0.5) <= 0.15,
            fmt("dPhi/dA:%s (%s); spacing exponent %.3f (|p| in [0.35, 0.65])", r.c_str(),
                increasing ? "strictly increasing" : "NOT increasing", slope)};
}

// 10. Two validation runs give byte-identical manifests.
Outcome criterion10() {
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "sqw_acceptance_determinism";
    fs::remove_all(base);
    ScenarioConfig c;
    c.kind = ScenarioKind::validate;
    std::string manifests[2];
    int exit_codes[2];
    for (int k = 0; k < 2; ++k) {
        const auto r = run_scenario(c, {base / std::to_string(k), 1});
        exit_codes[k] = r.exit_code;
        manifests[k] = read_file(base / std::to_string(k) / "manifest.json");
    }
    fs::remove_all(base);
    const bool same = manifests[0] == manifests[1];
    return {same, fmt("manifests %s (%zu bytes, sha256 %.16s...); validation exit codes %d, %d",
                      same ? "identical" : "DIFFER", manifests[0].size(), sha256_hex(manifests[0]).c_str(),
                      exit_codes[0], exit_codes[1])};
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc == 3 && std::string(argv[1]) == "--only") only = std::atoi(argv[2]);

    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"analytic vs split-step equivalence", criterion1},
        {"kernel quadrature equivalence", criterion2},
        {"classical centroid trajectory", criterion3},
        {"shape preservation", criterion4},
        {"phase ledger (tilt + cubic phase)", criterion5},
        {"orbital angular momentum", criterion6},
        {"interferometer phase", criterion7},
        {"spectral route", criterion8},
        {"vortex sensitivity", criterion9},
        {"determinism", criterion10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only && static_cast<int>(i) + 1 != only) continue;
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s criterion %2zu  %-36s %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
