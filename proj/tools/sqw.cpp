// sqw: run a scenario from a JSON config.
//
//   sqw <scenario> --config <file> [--out <dir>] [--threads N] [--validate-only]
//
// Exit codes: 0 ok, 1 unexpected error, 2 config error, 3 numerical guard
// (including a failed validation check), 4 I/O error.

#include "sqw/errors.hpp"
#include "sqw/parallel.hpp"
#include "sqw/scenario.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"sqw: paraxial matter-wave propagation in a linear potential"};
    std::string scenario, config_path, out_dir;
    unsigned threads = 0;
    bool validate_only = false;

    app.add_option("scenario", scenario, "propagate | interfere-grating | interfere-vortex | currents | expand | validate")
        ->required();
    app.add_option("--config", config_path, "scenario JSON file")->required();
    app.add_option("--out", out_dir, "output directory (overrides output.directory)");
    app.add_option("--threads", threads, "worker threads (default: SQW_THREADS or hardware)")
        ->check(CLI::Range(1u, 1024u));
    app.add_flag("--validate-only", validate_only, "parse and check the config, then exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const auto kind = sqw::scenario_kind_from_string(scenario);
        const auto config = sqw::load_config(config_path);
        if (config.kind != kind) {
            throw sqw::ConfigError("scenario", std::string("config is for '") + sqw::to_string(config.kind) +
                                                   "' but '" + scenario + "' was requested");
        }
        if (validate_only) {
            std::cout << "config ok: " << sqw::to_string(config.kind) << "\n";
            return 0;
        }
        sqw::RunOptions ro;
        if (!out_dir.empty()) ro.out_dir = out_dir;
        ro.threads = threads ? threads : sqw::default_thread_count();
        const auto res = sqw::run_scenario(config, ro);
        std::cout << res.summary << "\n"
                  << res.files.size() << " files written to " << res.out_dir.string() << "\n";
        return res.exit_code;
    } catch (const sqw::ConfigError& e) {
        std::cerr << "config error at " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        const int rc = sqw::exit_code_for_current_exception();
        std::cerr << "error: " << e.what() << "\n";
        return rc;
    }
}
