#pragma once

// JSON scenario configuration and the scenario runner behind the CLI.

#include "sqw/analytic.hpp"
#include "sqw/physics.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sqw {

enum class ScenarioKind { propagate, interfere_grating, interfere_vortex, currents, expand, validate };

const char* to_string(ScenarioKind kind) noexcept;
/// "propagate", "interfere-grating", ... Throws ConfigError("scenario", ...) otherwise.
ScenarioKind scenario_kind_from_string(const std::string& name);

/// Physical beam, given with either p0 or the de Broglie wavelength.
struct BeamConfig {
    double mass = 0.0;
    double p0 = 0.0;
    double w0 = 0.0;

    friend bool operator==(const BeamConfig&, const BeamConfig&) = default;
};

struct PotentialConfig {
    bool si = false;    ///< value is alpha (J/m) rather than the reduced A
    double value = 0.0;

    friend bool operator==(const PotentialConfig&, const PotentialConfig&) = default;
};

struct GridConfig {
    std::size_t nx = 256;
    std::size_t ny = 256;
    double extent_x = 8.0;
    double extent_y = 8.0;

    friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct SweepConfig {
    std::vector<double> zeta; ///< propagation samples (reduced)
    bool zeta_si = false;     ///< samples were given as z in metres
    std::vector<double> A;    ///< reduced potential strengths; empty = the potential block
    std::vector<int> ell;

    friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct ScenarioOptions {
    std::string method = "analytic"; ///< propagate: "analytic" | "split-step"
    int steps_per_rayleigh = 32;
    double absorber_width = 0.0;
    double k_T = 2.0;             ///< grating kick (reduced)
    double zeta_total = 2.0;      ///< grating length
    int p = 0;                    ///< vortex radial index
    double separation_factor = 5.0; ///< vortex half-separation in ring radii sqrt(|l|/2)
    double vortex_zeta = 0.0;     ///< 0 = sqrt(separation_factor^2 - 1)
    std::vector<std::pair<double, double>> seeds;
    double zeta_begin = 0.0;
    double zeta_end = 2.0;

    friend bool operator==(const ScenarioOptions&, const ScenarioOptions&) = default;
};

struct OutputConfig {
    std::string directory = "out";
    bool snapshots = true;
    bool heatmaps = true;

    friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::propagate;
    std::optional<BeamConfig> beam;
    PotentialConfig potential;
    ModeSpec mode = ModeSpec::hg(0, 0);
    std::optional<GridConfig> grid; ///< absent: 256^2, extent 8 (grating/vortex choose their own)
    SweepConfig sweep;
    ScenarioOptions options;
    OutputConfig output;

    /// Reduced A of the potential block (converts alpha when SI).
    double reduced_A() const;
    /// Reduced zeta samples (converts metres when SI).
    std::vector<double> reduced_zeta() const;
    /// The A sweep, or the single potential value when the sweep is empty.
    std::vector<double> A_values() const;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Parses and validates. Throws ConfigError with the offending field path.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Canonical JSON (all fields, fixed order). parse(serialize(c)) == c.
std::string serialize_config(const ScenarioConfig& config);

/// Cross-field checks run by parse_config; throws ConfigError.
void validate_config(const ScenarioConfig& config);

struct RunOptions {
    std::optional<std::filesystem::path> out_dir; ///< overrides output.directory
    unsigned threads = 1;
};

struct RunResult {
    int exit_code = 0;
    std::filesystem::path out_dir;
    std::vector<std::string> files; ///< relative paths, manifest last
    std::string summary;
};

/// Runs the scenario and writes its artifacts plus manifest.json. Errors
/// propagate as exceptions; files written by the failed run are removed.
RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

/// Exit code convention: 0 ok, 2 config, 3 numerical guard, 4 I/O.
int exit_code_for_current_exception() noexcept;

} // namespace sqw
