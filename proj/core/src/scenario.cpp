#include "sqw/scenario.hpp"

#include "sqw/errors.hpp"
#include "sqw/interfere.hpp"
#include "sqw/manifest.hpp"
#include "sqw/numeric.hpp"
#include "sqw/observables.hpp"
#include "sqw/render.hpp"
#include "sqw/snapshot.hpp"
#include "sqw/spectral.hpp"
#include "sqw/validation.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace sqw {

namespace {

using json = nlohmann::ordered_json;

// ---- parsing helpers -------------------------------------------------------

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return it.key() == a; });
        if (!known) throw ConfigError(join(path, it.key()), "unknown field");
    }
}

double get_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path, "must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(path, "must be finite");
    return d;
}

long long get_integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ConfigError(path, "must be an integer");
    return v.get<long long>();
}

bool get_bool(const json& v, const std::string& path) {
    if (!v.is_boolean()) throw ConfigError(path, "must be true or false");
    return v.get<bool>();
}

std::string get_string(const json& v, const std::string& path) {
    if (!v.is_string()) throw ConfigError(path, "must be a string");
    return v.get<std::string>();
}

std::vector<double> get_number_list(const json& v, const std::string& path) {
    if (!v.is_array()) throw ConfigError(path, "must be an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_number(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

template <class F>
void if_present(const json& obj, const char* key, const std::string& path, F&& f) {
    if (obj.contains(key)) f(obj.at(key), join(path, key));
}

int to_int(long long v, const std::string& path) {
    if (v < -1000000 || v > 1000000) throw ConfigError(path, "out of range");
    return static_cast<int>(v);
}

// ---- output helpers --------------------------------------------------------

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string indexed(const char* stem, std::size_t k) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%03zu", stem, k);
    return buf;
}

std::string index_name(const char* stem, std::size_t k, const char* ext) { return indexed(stem, k) + "." + ext; }

class Writer {
public:
    explicit Writer(std::filesystem::path root) : root_(std::move(root)) {}

    void text(const std::string& name, const std::string& bytes) {
        write_file(root_ / name, bytes);
        files_.push_back(name);
    }
    void snapshot(const std::string& name, const ComplexField2D& f, const SnapshotMeta& meta) { text(name, encode_snapshot(f, meta)); }
    void heatmaps(const std::string& stem, const ComplexField2D& f) {
        text(stem + "_density.pgm", render_heatmap(f, HeatmapKind::density));
        text(stem + "_phase.pgm", render_heatmap(f, HeatmapKind::phase));
    }

    const std::vector<std::string>& files() const { return files_; }
    const std::filesystem::path& root() const { return root_; }

    void remove_all() noexcept {
        for (const auto& f : files_) {
            std::error_code ec;
            std::filesystem::remove(root_ / f, ec);
        }
        files_.clear();
    }

private:
    std::filesystem::path root_;
    std::vector<std::string> files_;
};

Grid2D make_config_grid(const ScenarioConfig& c) {
    const GridConfig g = c.grid.value_or(GridConfig{});
    return Grid2D(g.nx, g.ny, g.extent_x, g.extent_y);
}

std::optional<ParticleBeam> make_beam(const ScenarioConfig& c) {
    if (!c.beam) return std::nullopt;
    return ParticleBeam(c.beam->mass, c.beam->p0, c.beam->w0);
}

double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---- scenarios -------------------------------------------------------------

std::string run_propagate(const ScenarioConfig& c, const RunOptions& ro, Writer& w) {
    const Grid2D grid = make_config_grid(c);
    const double A = c.reduced_A();
    const auto zetas = c.reduced_zeta();
    const auto beam = make_beam(c);
    const SnapshotMeta meta{A, c.mode, true};

    std::optional<SplitStepPropagator> prop;
    if (c.options.method == "split-step") {
        SplitStepPlan plan{grid, A, c.options.steps_per_rayleigh, c.options.absorber_width, 2, ro.threads};
        prop.emplace(plan, initial_field(c.mode, grid));
    }
    std::string csv = "zeta,x_c,y_c,x_classical";
    if (beam) csv += ",z_m,x_c_m,y_c_m,x_classical_m";
    csv += "\n";
    for (std::size_t k = 0; k < zetas.size(); ++k) {
        const double z = zetas[k];
        ComplexField2D f(grid);
        if (prop) {
            if (z != prop->zeta()) prop->advance(z - prop->zeta());
            f = prop->field();
        } else {
            f = z == 0.0 ? initial_field(c.mode, grid) : propagated_field(c.mode, A, z, grid);
        }
        const auto [xc, yc] = center_of_mass(f);
        const double xcl = classical_centroid(A, z, c.mode.offset_x);
        csv += fmt(z) + "," + fmt(xc) + "," + fmt(yc) + "," + fmt(xcl);
        if (beam) {
            const double w0 = beam->w0();
            csv += "," + fmt(z_from_zeta(*beam, z)) + "," + fmt(xc * w0) + "," + fmt(yc * w0) + "," + fmt(xcl * w0);
        }
        csv += "\n";
        if (c.output.snapshots) w.snapshot(index_name("field", k, "sqwf"), f, meta);
        if (c.output.heatmaps) w.heatmaps(indexed("field", k), f);
    }
    w.text("centroid.csv", csv);
    return "propagate: " + std::to_string(zetas.size()) + " samples (" + c.options.method + ")";
}

std::string run_grating(const ScenarioConfig& c, const RunOptions& ro, Writer& w) {
    const auto beam = make_beam(c);
    GratingOptions go;
    go.mode = c.mode;
    if (c.grid) go.grid = make_config_grid(c);
    go.steps_per_rayleigh = c.options.steps_per_rayleigh;
    go.threads = ro.threads;
    std::string csv = "A,k_T,zeta_total,delta_phi,expected,fringe_spacing,visibility";
    if (beam) csv += ",alpha,p_T,z_total_m";
    csv += "\n";
    const auto As = c.A_values();
    double worst = 0.0;
    for (std::size_t k = 0; k < As.size(); ++k) {
        const auto r = grating_interferometer(As[k], c.options.k_T, c.options.zeta_total, go);
        if (r.expected != 0.0) worst = std::max(worst, std::abs(r.delta_phi - r.expected) / std::abs(r.expected));
        csv += fmt(As[k]) + "," + fmt(c.options.k_T) + "," + fmt(c.options.zeta_total) + "," + fmt(r.delta_phi) + "," +
               fmt(r.expected) + "," + fmt(r.fringes.fringe_spacing) + "," + fmt(r.fringes.visibility);
        if (beam) {
            csv += "," + fmt(alpha_from_reduced(*beam, As[k])) + "," +
                   fmt(c.options.k_T * constants::hbar / beam->w0()) + "," + fmt(z_from_zeta(*beam, c.options.zeta_total));
        }
        csv += "\n";
        if (c.output.snapshots) w.snapshot(index_name("grating", k, "sqwf"), r.output, {As[k], c.mode, true});
        if (c.output.heatmaps) w.text(index_name("grating", k, "pgm"), render_heatmap(r.output, HeatmapKind::density));
    }
    w.text("grating.csv", csv);
    char buf[96];
    std::snprintf(buf, sizeof buf, "interfere-grating: %zu A values, worst relative dPhi error %.3e", As.size(), worst);
    return buf;
}

std::string run_vortex(const ScenarioConfig& c, const RunOptions&, Writer& w) {
    const auto As = c.A_values();
    const double f = c.options.separation_factor;
    const double zeta = c.options.vortex_zeta > 0.0 ? c.options.vortex_zeta : std::sqrt(f * f - 1.0);
    VortexOptions vo;
    if (c.grid) vo.grid = make_config_grid(c);
    std::string csv = "ell,p,separation,zeta,fringe_spacing,phase_rate\n";
    std::vector<double> ells, spacings, rates;
    for (int ell : c.sweep.ell) {
        const double d = f * std::sqrt(std::abs(ell) / 2.0);
        const auto s = vortex_sensitivity(ell, c.options.p, d, zeta, As, vo);
        csv += std::to_string(ell) + "," + std::to_string(c.options.p) + "," + fmt(d) + "," + fmt(zeta) + "," +
               fmt(s.spacing) + "," + fmt(s.phase_rate) + "\n";
        ells.push_back(std::abs(ell));
        spacings.push_back(s.spacing);
        rates.push_back(s.phase_rate);
        const auto r = vortex_interfere(ell, c.options.p, d, As.front(), zeta, vo);
        std::string cut = "x,intensity\n";
        for (std::size_t k = 0; k < r.fringes.x.size(); ++k) cut += fmt(r.fringes.x[k]) + "," + fmt(r.fringes.intensity[k]) + "\n";
        const std::string tag = "vortex_l" + std::to_string(ell);
        w.text(tag + "_cut.csv", cut);
        if (c.output.snapshots) w.snapshot(tag + ".sqwf", r.field, {As.front(), std::nullopt, true});
        if (c.output.heatmaps) w.text(tag + ".pgm", render_heatmap(r.field, HeatmapKind::density));
    }
    w.text("vortex.csv", csv);
    std::string summary = "interfere-vortex: " + std::to_string(ells.size()) + " ell values";
    if (ells.size() >= 2) {
        const double slope = fit_log_slope(ells, spacings);
        w.text("vortex_fit.csv", "quantity,value\nspacing_loglog_slope," + fmt(slope) + "\n");
        char buf[64];
        std::snprintf(buf, sizeof buf, ", spacing exponent %.4f", slope);
        summary += buf;
    }
    return summary;
}

const char* status_name(StreamlineStatus s) {
    switch (s) {
    case StreamlineStatus::complete: return "complete";
    case StreamlineStatus::exited_grid: return "exited_grid";
    case StreamlineStatus::rejected_null: return "rejected_null";
    }
    return "unknown";
}

std::string run_currents(const ScenarioConfig& c, const RunOptions&, Writer& w) {
    const Grid2D grid = make_config_grid(c);
    const double A = c.reduced_A();
    const auto lines = trace_current_lines(c.mode, A, c.options.zeta_begin, c.options.zeta_end, c.options.seeds, grid);
    std::string pts = "seed,zeta,x,y\n", status = "seed,x0,y0,status,points\n";
    for (std::size_t s = 0; s < lines.size(); ++s) {
        for (const auto& p : lines[s].points) pts += std::to_string(s) + "," + fmt(p.zeta) + "," + fmt(p.x) + "," + fmt(p.y) + "\n";
        status += std::to_string(s) + "," + fmt(lines[s].seed.x) + "," + fmt(lines[s].seed.y) + "," +
                  status_name(lines[s].status) + "," + std::to_string(lines[s].points.size()) + "\n";
    }
    w.text("streamlines.csv", pts);
    w.text("streamline_status.csv", status);

    const auto zetas = c.reduced_zeta();
    if (!zetas.empty()) {
        const auto beam = make_beam(c);
        std::string oam = beam ? "zeta,L_z,L_x,L_y\n" : "zeta,L_z\n";
        // L_x and L_y need the physical scale p0 w0 / hbar; L_z does not.
        const ParticleBeam scale_beam = beam ? *beam : ParticleBeam(1.0, 1.0, 1.0);
        for (std::size_t k = 0; k < zetas.size(); ++k) {
            const auto f = propagated_field(c.mode, A, zetas[k], grid);
            oam += fmt(zetas[k]) + "," + fmt(oam_expectation(f, OamComponent::z, scale_beam));
            if (beam) {
                oam += "," + fmt(oam_expectation(f, OamComponent::x, *beam)) + "," +
                       fmt(oam_expectation(f, OamComponent::y, *beam));
            }
            oam += "\n";
            if (c.output.heatmaps) w.heatmaps(indexed("current", k), f);
        }
        w.text("oam.csv", oam);
    }
    return "currents: " + std::to_string(lines.size()) + " current lines";
}

std::string run_expand(const ScenarioConfig& c, const RunOptions&, Writer& w) {
    const Grid2D grid = make_config_grid(c);
    const double A = c.reduced_A();
    const auto zetas = c.reduced_zeta();
    double zmax = 0.0;
    for (double z : zetas) zmax = std::max(zmax, std::abs(z));
    const auto coeffs = analyze(c.mode, A, grid, zmax);
    w.text("coeff_x.csv", coefficients_csv_x(coeffs));
    w.text("coeff_y.csv", coefficients_csv_y(coeffs));
    std::string csv = "zeta,l2_vs_analytic\n";
    for (std::size_t k = 0; k < zetas.size(); ++k) {
        const auto f = reconstruct(evolve_in_eigenbasis(coeffs, zetas[k]), grid);
        csv += fmt(zetas[k]) + "," + fmt(l2_distance(f, propagated_field(c.mode, A, zetas[k], grid))) + "\n";
        if (c.output.snapshots) w.snapshot(index_name("expand", k, "sqwf"), f, {A, c.mode, false});
    }
    w.text("expand.csv", csv);
    return "expand: " + std::to_string(coeffs.c.size()) + " x samples, " + std::to_string(coeffs.d.size()) +
           " y samples";
}

std::string run_validate(const ScenarioConfig&, const RunOptions& ro, Writer& w, int& exit_code) {
    const auto checks = run_validation_suite(ro.threads);
    w.text("validation.csv", validation_csv(checks));
    std::string out = "validate:\n";
    std::size_t failed = 0;
    for (const auto& ch : checks) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "  %-4s %-44s %.3e (tol %.1e)\n", ch.pass ? "PASS" : "FAIL", ch.name.c_str(),
                      ch.value, ch.tolerance);
        out += buf;
        if (!ch.pass) ++failed;
    }
    out += "  " + std::to_string(checks.size() - failed) + "/" + std::to_string(checks.size()) + " passed";
    if (failed) exit_code = 3;
    return out;
}

} // namespace

// ---- kinds -----------------------------------------------------------------

const char* to_string(ScenarioKind kind) noexcept {
    switch (kind) {
    case ScenarioKind::propagate: return "propagate";
    case ScenarioKind::interfere_grating: return "interfere-grating";
    case ScenarioKind::interfere_vortex: return "interfere-vortex";
    case ScenarioKind::currents: return "currents";
    case ScenarioKind::expand: return "expand";
    case ScenarioKind::validate: return "validate";
    }
    return "unknown";
}

ScenarioKind scenario_kind_from_string(const std::string& name) {
    for (auto k : {ScenarioKind::propagate, ScenarioKind::interfere_grating, ScenarioKind::interfere_vortex,
                   ScenarioKind::currents, ScenarioKind::expand, ScenarioKind::validate}) {
        if (name == to_string(k)) return k;
    }
    throw ConfigError("scenario", "unknown scenario kind '" + name + "'");
}

double ScenarioConfig::reduced_A() const {
    if (!potential.si) return potential.value;
    if (!beam) throw ConfigError("potential.alpha", "an SI potential needs a beam block");
    return nondimensionalize(ParticleBeam(beam->mass, beam->p0, beam->w0), potential.value).A;
}

std::vector<double> ScenarioConfig::reduced_zeta() const {
    if (!sweep.zeta_si) return sweep.zeta;
    if (!beam) throw ConfigError("sweep.z", "z samples in metres need a beam block");
    const ParticleBeam b(beam->mass, beam->p0, beam->w0);
    std::vector<double> out;
    for (double z : sweep.zeta) out.push_back(zeta_from_z(b, z));
    return out;
}

std::vector<double> ScenarioConfig::A_values() const {
    if (!sweep.A.empty()) return sweep.A;
    return {reduced_A()};
}

// ---- parse / serialize -----------------------------------------------------

ScenarioConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
    }
    check_keys(root, "", {"scenario", "beam", "potential", "mode", "grid", "sweep", "options", "output"});
    ScenarioConfig c;
    if (!root.contains("scenario")) throw ConfigError("scenario", "missing");
    c.kind = scenario_kind_from_string(get_string(root["scenario"], "scenario"));

    if_present(root, "beam", "", [&](const json& b, const std::string& path) {
        check_keys(b, path, {"mass", "p0", "wavelength", "w0"});
        BeamConfig bc;
        if (!b.contains("mass")) throw ConfigError(path + ".mass", "missing");
        if (!b.contains("w0")) throw ConfigError(path + ".w0", "missing");
        bc.mass = get_number(b["mass"], path + ".mass");
        bc.w0 = get_number(b["w0"], path + ".w0");
        const bool has_p0 = b.contains("p0"), has_l = b.contains("wavelength");
        if (has_p0 == has_l) throw ConfigError(path + ".p0", "give exactly one of p0 and wavelength");
        if (has_p0) {
            bc.p0 = get_number(b["p0"], path + ".p0");
        } else {
            const double l = get_number(b["wavelength"], path + ".wavelength");
            if (!(l > 0.0)) throw ConfigError(path + ".wavelength", "must be > 0");
            bc.p0 = constants::planck / l;
        }
        c.beam = bc;
    });

    if_present(root, "potential", "", [&](const json& p, const std::string& path) {
        check_keys(p, path, {"A", "alpha"});
        const bool has_a = p.contains("A"), has_alpha = p.contains("alpha");
        if (has_a == has_alpha) throw ConfigError(path, "give exactly one of A (reduced) and alpha (SI)");
        c.potential.si = has_alpha;
        c.potential.value = has_a ? get_number(p["A"], path + ".A") : get_number(p["alpha"], path + ".alpha");
    });

    if_present(root, "mode", "", [&](const json& m, const std::string& path) {
        check_keys(m, path, {"family", "m", "n", "ell", "p", "offset_x", "offset_y"});
        if (!m.contains("family")) throw ConfigError(path + ".family", "missing");
        const auto fam = get_string(m["family"], path + ".family");
        auto idx = [&](const char* key) {
            if (!m.contains(key)) throw ConfigError(path + "." + key, "missing");
            return to_int(get_integer(m[key], path + "." + key), path + "." + key);
        };
        if (fam == "HG") {
            if (m.contains("ell") || m.contains("p")) throw ConfigError(path, "HG modes take m and n");
            c.mode = ModeSpec::hg(idx("m"), idx("n"));
        } else if (fam == "LG") {
            if (m.contains("m") || m.contains("n")) throw ConfigError(path, "LG modes take ell and p");
            c.mode = ModeSpec::lg(idx("ell"), idx("p"));
        } else {
            throw ConfigError(path + ".family", "must be HG or LG");
        }
        if_present(m, "offset_x", path, [&](const json& v, const std::string& pp) { c.mode.offset_x = get_number(v, pp); });
        if_present(m, "offset_y", path, [&](const json& v, const std::string& pp) { c.mode.offset_y = get_number(v, pp); });
    });

    if_present(root, "grid", "", [&](const json& g, const std::string& path) {
        check_keys(g, path, {"nx", "ny", "extent_x", "extent_y"});
        GridConfig gc;
        auto count = [&](const char* key, std::size_t& out) {
            if_present(g, key, path, [&](const json& v, const std::string& pp) {
                const auto n = get_integer(v, pp);
                if (n < 8 || n > 65536 || n % 2 != 0) throw ConfigError(pp, "must be even and in [8, 65536]");
                out = static_cast<std::size_t>(n);
            });
        };
        count("nx", gc.nx);
        count("ny", gc.ny);
        if_present(g, "extent_x", path, [&](const json& v, const std::string& pp) { gc.extent_x = get_number(v, pp); });
        if_present(g, "extent_y", path, [&](const json& v, const std::string& pp) { gc.extent_y = get_number(v, pp); });
        c.grid = gc;
    });

    if_present(root, "sweep", "", [&](const json& s, const std::string& path) {
        check_keys(s, path, {"zeta", "z", "A", "ell"});
        if (s.contains("zeta") && s.contains("z")) throw ConfigError(path, "give zeta (reduced) or z (metres), not both");
        if (s.contains("zeta")) c.sweep.zeta = get_number_list(s["zeta"], path + ".zeta");
        if (s.contains("z")) {
            c.sweep.zeta = get_number_list(s["z"], path + ".z");
            c.sweep.zeta_si = true;
        }
        if (s.contains("A")) c.sweep.A = get_number_list(s["A"], path + ".A");
        if (s.contains("ell")) {
            const auto& l = s["ell"];
            if (!l.is_array()) throw ConfigError(path + ".ell", "must be an array of integers");
            for (std::size_t i = 0; i < l.size(); ++i) {
                const std::string pp = path + ".ell[" + std::to_string(i) + "]";
                c.sweep.ell.push_back(to_int(get_integer(l[i], pp), pp));
            }
        }
    });

    if_present(root, "options", "", [&](const json& o, const std::string& path) {
        check_keys(o, path, {"method", "steps_per_rayleigh", "absorber_width", "k_T", "zeta_total", "p",
                             "separation_factor", "vortex_zeta", "seeds", "zeta_begin", "zeta_end"});
        auto& op = c.options;
        if_present(o, "method", path, [&](const json& v, const std::string& pp) { op.method = get_string(v, pp); });
        if_present(o, "steps_per_rayleigh", path,
                   [&](const json& v, const std::string& pp) { op.steps_per_rayleigh = to_int(get_integer(v, pp), pp); });
        if_present(o, "absorber_width", path, [&](const json& v, const std::string& pp) { op.absorber_width = get_number(v, pp); });
        if_present(o, "k_T", path, [&](const json& v, const std::string& pp) { op.k_T = get_number(v, pp); });
        if_present(o, "zeta_total", path, [&](const json& v, const std::string& pp) { op.zeta_total = get_number(v, pp); });
        if_present(o, "p", path, [&](const json& v, const std::string& pp) { op.p = to_int(get_integer(v, pp), pp); });
        if_present(o, "separation_factor", path,
                   [&](const json& v, const std::string& pp) { op.separation_factor = get_number(v, pp); });
        if_present(o, "vortex_zeta", path, [&](const json& v, const std::string& pp) { op.vortex_zeta = get_number(v, pp); });
        if_present(o, "zeta_begin", path, [&](const json& v, const std::string& pp) { op.zeta_begin = get_number(v, pp); });
        if_present(o, "zeta_end", path, [&](const json& v, const std::string& pp) { op.zeta_end = get_number(v, pp); });
        if_present(o, "seeds", path, [&](const json& v, const std::string& pp) {
            if (!v.is_array()) throw ConfigError(pp, "must be an array of [x, y] pairs");
            for (std::size_t i = 0; i < v.size(); ++i) {
                const std::string ip = pp + "[" + std::to_string(i) + "]";
                const auto xy = get_number_list(v[i], ip);
                if (xy.size() != 2) throw ConfigError(ip, "must be an [x, y] pair");
                op.seeds.emplace_back(xy[0], xy[1]);
            }
        });
    });

    if_present(root, "output", "", [&](const json& o, const std::string& path) {
        check_keys(o, path, {"directory", "snapshots", "heatmaps"});
        if_present(o, "directory", path, [&](const json& v, const std::string& pp) { c.output.directory = get_string(v, pp); });
        if_present(o, "snapshots", path, [&](const json& v, const std::string& pp) { c.output.snapshots = get_bool(v, pp); });
        if_present(o, "heatmaps", path, [&](const json& v, const std::string& pp) { c.output.heatmaps = get_bool(v, pp); });
    });

    validate_config(c);
    return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const IoError& e) {
        throw ConfigError("<file>", e.what());
    }
    return parse_config(text);
}

std::string serialize_config(const ScenarioConfig& c) {
    json root;
    root["scenario"] = to_string(c.kind);
    if (c.beam) root["beam"] = {{"mass", c.beam->mass}, {"p0", c.beam->p0}, {"w0", c.beam->w0}};
    root["potential"] = c.potential.si ? json{{"alpha", c.potential.value}} : json{{"A", c.potential.value}};
    json mode;
    if (c.mode.family == ModeFamily::HG) mode = {{"family", "HG"}, {"m", c.mode.first}, {"n", c.mode.second}};
    else mode = {{"family", "LG"}, {"ell", c.mode.first}, {"p", c.mode.second}};
    mode["offset_x"] = c.mode.offset_x;
    mode["offset_y"] = c.mode.offset_y;
    root["mode"] = mode;
    if (c.grid) root["grid"] = {{"nx", c.grid->nx}, {"ny", c.grid->ny}, {"extent_x", c.grid->extent_x}, {"extent_y", c.grid->extent_y}};
    json sweep = json::object();
    sweep[c.sweep.zeta_si ? "z" : "zeta"] = c.sweep.zeta;
    sweep["A"] = c.sweep.A;
    sweep["ell"] = c.sweep.ell;
    root["sweep"] = sweep;
    json seeds = json::array();
    for (const auto& [x, y] : c.options.seeds) seeds.push_back({x, y});
    const auto& o = c.options;
    root["options"] = {{"method", o.method},
                       {"steps_per_rayleigh", o.steps_per_rayleigh},
                       {"absorber_width", o.absorber_width},
                       {"k_T", o.k_T},
                       {"zeta_total", o.zeta_total},
                       {"p", o.p},
                       {"separation_factor", o.separation_factor},
                       {"vortex_zeta", o.vortex_zeta},
                       {"seeds", seeds},
                       {"zeta_begin", o.zeta_begin},
                       {"zeta_end", o.zeta_end}};
    root["output"] = {{"directory", c.output.directory}, {"snapshots", c.output.snapshots}, {"heatmaps", c.output.heatmaps}};
    return root.dump(2) + "\n";
}

void validate_config(const ScenarioConfig& c) {
    if (c.beam) {
        if (!(c.beam->mass > 0.0)) throw ConfigError("beam.mass", "must be > 0");
        if (!(c.beam->p0 > 0.0)) throw ConfigError("beam.p0", "must be > 0");
        if (!(c.beam->w0 > 0.0)) throw ConfigError("beam.w0", "must be > 0");
    }
    if (c.potential.si && !c.beam) throw ConfigError("potential.alpha", "an SI potential needs a beam block");
    if (c.sweep.zeta_si && !c.beam) throw ConfigError("sweep.z", "z samples in metres need a beam block");
    if (c.potential.si && !c.sweep.A.empty())
        throw ConfigError("sweep.A", "a reduced A sweep cannot be combined with an SI potential block");
    try {
        c.mode.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("mode", e.what());
    }
    if (c.grid) {
        if (!(c.grid->extent_x > 0.0)) throw ConfigError("grid.extent_x", "must be > 0");
        if (!(c.grid->extent_y > 0.0)) throw ConfigError("grid.extent_y", "must be > 0");
    }
    const auto& o = c.options;
    if (o.method != "analytic" && o.method != "split-step")
        throw ConfigError("options.method", "must be 'analytic' or 'split-step'");
    if (o.steps_per_rayleigh < 16) throw ConfigError("options.steps_per_rayleigh", "must be >= 16");
    if (!(o.absorber_width >= 0.0 && o.absorber_width < 0.5)) throw ConfigError("options.absorber_width", "must be in [0, 0.5)");

    switch (c.kind) {
    case ScenarioKind::propagate:
        if (c.sweep.zeta.empty()) throw ConfigError("sweep.zeta", "propagate needs at least one zeta sample");
        break;
    case ScenarioKind::interfere_grating:
        if (!(o.zeta_total > 0.0)) throw ConfigError("options.zeta_total", "must be > 0");
        break;
    case ScenarioKind::interfere_vortex:
        if (c.sweep.ell.empty()) throw ConfigError("sweep.ell", "interfere-vortex needs at least one ell");
        for (std::size_t i = 0; i < c.sweep.ell.size(); ++i)
            if (c.sweep.ell[i] == 0) throw ConfigError("sweep.ell[" + std::to_string(i) + "]", "must be non-zero");
        if (c.sweep.A.size() < 2) throw ConfigError("sweep.A", "interfere-vortex needs at least two increasing A values");
        for (std::size_t i = 1; i < c.sweep.A.size(); ++i)
            if (!(c.sweep.A[i] > c.sweep.A[i - 1])) throw ConfigError("sweep.A", "values must increase");
        if (o.p < 0) throw ConfigError("options.p", "must be >= 0");
        if (!(o.separation_factor > 1.0)) throw ConfigError("options.separation_factor", "must be > 1");
        if (o.vortex_zeta < 0.0) throw ConfigError("options.vortex_zeta", "must be >= 0 (0 selects the default)");
        break;
    case ScenarioKind::currents:
        if (!(o.zeta_end > o.zeta_begin)) throw ConfigError("options.zeta_end", "must exceed options.zeta_begin");
        if (o.seeds.empty()) throw ConfigError("options.seeds", "currents needs at least one seed");
        break;
    case ScenarioKind::expand:
        if (c.mode.family != ModeFamily::HG) throw ConfigError("mode.family", "expand supports HG modes");
        if (c.sweep.zeta.empty()) throw ConfigError("sweep.zeta", "expand needs at least one zeta sample");
        break;
    case ScenarioKind::validate: break;
    }
}

// ---- runner ----------------------------------------------------------------

RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options) {
    validate_config(config);
    RunResult res;
    res.out_dir = options.out_dir ? *options.out_dir : std::filesystem::path(config.output.directory);
    std::error_code ec;
    std::filesystem::create_directories(res.out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + res.out_dir.string() + "': " + ec.message());

    Writer w(res.out_dir);
    try {
        w.text("config.json", serialize_config(config));
        switch (config.kind) {
        case ScenarioKind::propagate: res.summary = run_propagate(config, options, w); break;
        case ScenarioKind::interfere_grating: res.summary = run_grating(config, options, w); break;
        case ScenarioKind::interfere_vortex: res.summary = run_vortex(config, options, w); break;
        case ScenarioKind::currents: res.summary = run_currents(config, options, w); break;
        case ScenarioKind::expand: res.summary = run_expand(config, options, w); break;
        case ScenarioKind::validate: res.summary = run_validate(config, options, w, res.exit_code); break;
        }
        const std::string manifest = build_manifest(res.out_dir, w.files(), to_string(config.kind));
        w.text("manifest.json", manifest);
    } catch (...) {
        w.remove_all();
        throw;
    }
    res.files = w.files();
    return res;
}

int exit_code_for_current_exception() noexcept {
    try {
        throw;
    } catch (const ConfigError&) {
        return 2;
    } catch (const NumericalGuardError&) {
        return 3;
    } catch (const IoError&) {
        return 4;
    } catch (const std::invalid_argument&) {
        return 2;
    } catch (...) {
        return 1;
    }
}

} // namespace sqw
